#include "uproc/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace uproc {

namespace {

std::vector<double> params_of(const json& j) {
    std::vector<double> p;
    if (j.contains("params"))
        for (const auto& v : j.at("params")) p.push_back(v.get<double>());
    return p;
}

json extended(double x) {
    if (std::isinf(x)) return x > 0 ? json("inf") : json("-inf");
    return json(x);
}

}  // namespace

Distribution distribution_from_json(const json& j) {
    try {
        std::string family = j.at("family").get<std::string>();
        if (family == "smirnov") {
            auto p = params_of(j);
            if (p.size() != 1) throw parse_error("smirnov needs params [eps]");
            return smirnov_cdf(p[0]);
        }
        if (family == "piecewise") {
            std::vector<std::pair<double, double>> knots;
            for (const auto& k : j.at("knots"))
                knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
            std::vector<Segment> segs(knots.empty() ? 0 : knots.size() - 1);
            if (j.contains("interp")) {
                const auto& interp = j.at("interp");
                auto parse_seg = [](const json& s) {
                    Segment seg;
                    if (s.is_string()) {
                        if (s.get<std::string>() != "linear")
                            throw parse_error("segment rule must be 'linear' or a power object");
                    } else {
                        seg.kind = Segment::Kind::power;
                        seg.exponent = s.at("power").get<double>();
                        seg.anchor_left = s.value("anchor", std::string("left")) == "left";
                    }
                    return seg;
                };
                if (interp.is_array()) {
                    if (interp.size() != segs.size())
                        throw parse_error("interp array must have one rule per segment");
                    for (std::size_t i = 0; i < segs.size(); ++i) segs[i] = parse_seg(interp[i]);
                } else {
                    for (auto& s : segs) s = parse_seg(interp);
                }
            }
            return piecewise_cdf(knots, segs);
        }
        return builtin(family, params_of(j));
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad distribution json: ") + e.what());
    }
}

json distribution_to_json(const Distribution& d) {
    return json{{"family", d.family}, {"params", d.params}};
}

ConvexLoss loss_from_json(const json& j) {
    try {
        return loss_catalog(j.at("id").get<std::string>(), params_of(j));
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad loss json: ") + e.what());
    }
}

Kernel kernel_from_json(const json& j) {
    try {
        return kernel_catalog(j.at("id").get<std::string>(), params_of(j), j.value("degree", 0));
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad kernel json: ") + e.what());
    }
}

MultivariateModel model_from_json(const json& j) {
    try {
        MultivariateModel m;
        if (j.contains("components")) {
            for (const auto& c : j.at("components")) m.components.push_back(distribution_from_json(c));
            m.dim = m.components.size();
        } else {
            m.components.push_back(distribution_from_json(j));
            m.dim = 1;
        }
        if (j.contains("dim") && j.at("dim").get<std::size_t>() != m.dim)
            throw parse_error("model dim does not match its component count");
        return m;
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad model json: ") + e.what());
    }
}

ProblemSpec problem_from_json(const json& j) {
    try {
        if (j.value("schema", 1) != 1) throw parse_error("unsupported schema version");
        ProblemSpec spec;
        spec.loss = loss_from_json(j.at("loss"));
        spec.kernel = j.contains("kernel") ? kernel_from_json(j.at("kernel"))
                                           : kernel_catalog("identity", {});
        spec.population.degree = spec.kernel.degree;
        if (j.contains("R")) {
            spec.population.R = distribution_from_json(j.at("R"));
        } else if (spec.kernel.degree == 1 && spec.kernel.id == "identity" && j.contains("raw")) {
            auto model = model_from_json(j.at("raw"));
            if (model.dim != 1) throw parse_error("identity kernel needs a 1-dimensional model");
            spec.population.R = model.components[0];
        } else {
            throw parse_error("problem needs R (law of k(X))");
        }
        if (j.contains("raw")) {
            spec.population.raw = model_from_json(j.at("raw"));
            spec.population.kernel = spec.kernel;
        }
        if (spec.population.degree >= 2 && !spec.population.raw)
            throw parse_error("degree >= 2 problems need the raw observation model");
        return spec;
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad problem json: ") + e.what());
    }
}

LimitLaw limit_law_from_json(const json& j) {
    try {
        if (j.contains("kind") && j.at("kind") == "normal")
            return LimitLaw::normal(j.at("variance").get<double>());
        LimitLaw law;
        law.sigma = j.at("sigma").get<double>();
        auto branch = [](const std::string& s) {
            if (s == "infinite") return LimitLaw::Branch::Infinite;
            if (s == "zero") return LimitLaw::Branch::Zero;
            if (s == "power") return LimitLaw::Branch::Power;
            throw parse_error("branch must be infinite|zero|power");
        };
        law.neg = branch(j.value("neg", std::string("power")));
        law.pos = branch(j.value("pos", std::string("power")));
        law.coef_neg = j.value("coef_neg", 1.0);
        law.coef_pos = j.value("coef_pos", 1.0);
        law.alpha = j.value("alpha", 1.0);
        law.c1 = j.value("c1", 0.0);
        law.c2 = j.value("c2", 0.0);
        return law;
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad limit law json: ") + e.what());
    }
}

json limit_law_to_json(const LimitLaw& law) {
    auto branch = [](LimitLaw::Branch b) {
        switch (b) {
            case LimitLaw::Branch::Infinite: return "infinite";
            case LimitLaw::Branch::Zero: return "zero";
            default: return "power";
        }
    };
    auto [p_minus, p_plus] = law.mass_at_infinity();
    return json{{"sigma", law.sigma},         {"neg", branch(law.neg)},
                {"pos", branch(law.pos)},     {"coef_neg", law.coef_neg},
                {"coef_pos", law.coef_pos},   {"alpha", law.alpha},
                {"c1", law.c1},               {"c2", law.c2},
                {"mass_minus_inf", p_minus},  {"mass_plus_inf", p_plus}};
}

json minimizer_to_json(const MinimizerInterval& mi) {
    return json{{"smallest", mi.smallest}, {"largest", mi.largest}, {"selected", mi.selected},
                {"policy", to_string(mi.policy)}, {"n", mi.n}, {"l", mi.l}, {"N", mi.N}};
}

json defaults_to_json() {
    return json{{"quad_tol", defaults::quad_tol},
                {"bisect_tol", defaults::bisect_tol},
                {"enumeration_cap", defaults::enumeration_cap},
                {"grid_t0", defaults::grid_t0},
                {"grid_ratio", defaults::grid_ratio},
                {"grid_levels", defaults::grid_levels},
                {"richardson_h0", defaults::richardson_h0},
                {"richardson_levels", defaults::richardson_levels},
                {"residual_clip", defaults::residual_clip},
                {"master_seed", defaults::master_seed},
                {"zeta_budget", defaults::zeta_budget},
                {"smirnov_clamp", "linear"}};
}

json report_to_json(const AsymptoticReport& rep, const PopulationProblem& prob,
                    const ConvexLoss& loss) {
    const auto& a = rep.attraction;
    json cls{{"tag", to_string(a.tag)}};
    if (a.alpha) cls["alpha"] = *a.alpha;
    if (a.c) cls["c"] = *a.c;
    if (a.d) cls["d"] = *a.d;
    if (a.c1) cls["c1"] = *a.c1;
    if (a.c2) cls["c2"] = *a.c2;
    if (a.slopes) cls["slopes"] = json::array({a.slopes->first, a.slopes->second});

    json diag{{"t", rep.diagnostics.t},
              {"v_right", rep.diagnostics.v_right},
              {"v_left", rep.diagnostics.v_left},
              {"ratio", rep.diagnostics.ratio},
              {"alpha_raw", rep.diagnostics.alpha_raw},
              {"r2_raw", rep.diagnostics.r2_raw},
              {"alpha_corrected", rep.diagnostics.alpha_corrected},
              {"fit_rms", rep.diagnostics.fit_rms},
              {"note", rep.diagnostics.note}};

    json out{{"schema", 1},
             {"m", rep.m},
             {"m_unique", rep.m_unique},
             {"zeta", rep.zeta},
             {"zeta_se", rep.zeta_se},
             {"sigma2", rep.sigma2},
             {"dplus_V", extended(rep.dplus_V)},
             {"dminus_V", extended(rep.dminus_V)},
             {"attraction", cls},
             {"a_n_rule", rep.a_n_rule},
             {"degree", rep.degree},
             {"diagnostics", diag},
             {"defaults", defaults_to_json()},
             {"seed", rep.seed},
             {"mc_budget", rep.mc_budget}};
    // a_n on a small reference grid, when the class admits one
    if (a.tag != ClassTag::Unclassified && a.tag != ClassTag::Degenerate) {
        json an;
        for (double n : {1e2, 1e3, 1e4}) {
            try {
                an[std::to_string((long long)n)] = normalizing_sequence(prob, loss, rep, n);
            } catch (const analysis_error&) {
                an[std::to_string((long long)n)] = nullptr;
            }
        }
        out["a_n"] = an;
        try {
            out["limit_law"] = limit_law_to_json(build_limit_law(rep));
        } catch (const analysis_error&) {
        }
    }
    return out;
}

json sim_result_to_json(const SimResult& res) {
    json out{{"schema", 1},
             {"ks", res.ks},
             {"cvm", res.cvm},
             {"reps", res.reps},
             {"n", res.n},
             {"m", res.m},
             {"a_n", res.a_n},
             {"seed", res.master_seed},
             {"runtime_seconds", res.runtime_seconds},
             {"count_minus_inf", res.ecdf.count_minus_inf},
             {"count_plus_inf", res.ecdf.count_plus_inf},
             {"law", limit_law_to_json(res.law)},
             {"defaults", defaults_to_json()},
             {"tolerance_provenance", "oracle-calibrated, not paper-derived"}};
    if (res.per_policy) {
        json pp;
        const char* names[3] = {"smallest", "largest", "midpoint"};
        for (int i = 0; i < 3; ++i) {
            const auto& e = (*res.per_policy)[i];
            pp[names[i]] = json{{"count_minus_inf", e.count_minus_inf},
                                {"count_plus_inf", e.count_plus_inf},
                                {"finite", e.residuals.size()}};
        }
        out["per_policy"] = pp;
    }
    return out;
}

SimSpec sim_from_json(const json& j) {
    try {
        if (j.value("schema", 1) != 1) throw parse_error("unsupported schema version");
        SimSpec spec;
        SimConfig& cfg = spec.config;
        cfg.loss = loss_from_json(j.at("loss"));
        cfg.kernel = j.contains("kernel") ? kernel_from_json(j.at("kernel"))
                                          : kernel_catalog("identity", {});
        cfg.raw = model_from_json(j.at("raw"));
        cfg.n = j.at("n").get<std::size_t>();
        cfg.reps = j.at("reps").get<std::size_t>();
        if (cfg.reps < 1) throw parse_error("reps must be >= 1");
        cfg.policy = policy_from_string(j.value("policy", std::string("midpoint")));
        cfg.master_seed = j.value("seed", defaults::master_seed);
        cfg.workers = j.value("workers", 1);
        if (j.contains("cap")) cfg.cap = j.at("cap").get<std::size_t>();

        const auto& an = j.at("a_n");
        spec.a_n_source = an.at("source").get<std::string>();
        double n = double(cfg.n);
        if (spec.a_n_source == "explicit") {
            cfg.a_n = an.at("value").get<double>();
        } else if (spec.a_n_source == "rsqrt") {
            cfg.a_n = 1.0 / std::sqrt(n);
        } else if (spec.a_n_source == "rsqrt_log2") {
            double lg = std::log(std::sqrt(n));
            cfg.a_n = 1.0 / (std::sqrt(n) * lg * lg);
        } else if (spec.a_n_source != "report") {
            throw parse_error("a_n source must be explicit|rsqrt|rsqrt_log2|report");
        }

        bool need_report = spec.a_n_source == "report" || !j.contains("m") || !j.contains("law");
        if (need_report) {
            json pj = j;
            ProblemSpec ps = problem_from_json(pj);
            spec.problem = ps;
        }
        if (j.contains("m")) cfg.m = j.at("m").get<double>();
        if (j.contains("law")) cfg.law = limit_law_from_json(j.at("law"));
        return spec;
    } catch (const json::exception& e) {
        throw parse_error(std::string("bad simulation json: ") + e.what());
    }
}

Dataset dataset_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open data file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw parse_error("bad numeric cell '" + cell + "' in " + path);
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("empty data file: " + path);
    return Dataset::from_rows(rows);
}

void residuals_to_csv(const std::string& path, const SimResult& res) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open output file: " + path);
    out << "residual,ecdf,H\n";
    const auto& e = res.ecdf;
    for (std::size_t i = 0; i < e.residuals.size(); ++i) {
        double x = e.residuals[i];
        out << x << ',' << e.value_at(x) << ',' << res.law.cdf(x) << '\n';
    }
}

void v_curve_to_csv(const std::string& path, const PopulationProblem& prob,
                    const ConvexLoss& loss, double m) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open output file: " + path);
    out << "t,V\n";
    for (int j = 0; j < defaults::grid_levels; ++j) {
        double t = defaults::grid_t0 * std::pow(defaults::grid_ratio, j);
        out << t << ',' << population_V(prob, loss, m + t) << '\n';
        out << -t << ',' << population_V(prob, loss, m - t) << '\n';
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw parse_error("bad json in " + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open output file: " + path);
    out << text;
}

}  // namespace uproc
