#include "uproc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>

#include "uproc/json_io.hpp"

namespace uproc {

namespace {

struct CliArgs {
    std::string config, data, out, csv, vcsv;
    std::string policy = "midpoint";
    std::uint64_t seed = defaults::master_seed;
    bool seed_set = false;
    std::size_t reps = 0, n = 0;
    int workers = 0;
};

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    std::cout << text << std::endl;
    if (!out_path.empty()) write_text_file(out_path, text + "\n");
}

int cmd_estimate(const CliArgs& a) {
    json pj = load_json_file(a.config);
    ConvexLoss loss = loss_from_json(pj.at("loss"));
    Kernel kernel =
        pj.contains("kernel") ? kernel_from_json(pj.at("kernel")) : kernel_catalog("identity", {});
    Dataset data = dataset_from_csv(a.data);
    KernelSample ks = kernel_sample(data, kernel);
    MinimizerInterval mi = argmin_interval(ks, loss, policy_from_string(a.policy));
    emit(minimizer_to_json(mi), a.out);
    return 0;
}

int cmd_analyze(const CliArgs& a) {
    ProblemSpec spec = problem_from_json(load_json_file(a.config));
    AnalyzeOptions opts;
    opts.seed = a.seed;
    AsymptoticReport rep = analyze(spec.population, spec.loss, opts);
    emit(report_to_json(rep, spec.population, spec.loss), a.out);
    if (!a.vcsv.empty()) v_curve_to_csv(a.vcsv, spec.population, spec.loss, rep.m);
    return 0;
}

int cmd_simulate(const CliArgs& a) {
    json sj = load_json_file(a.config);
    SimSpec spec = sim_from_json(sj);
    SimConfig& cfg = spec.config;
    if (a.seed_set) cfg.master_seed = a.seed;
    if (a.reps) cfg.reps = a.reps;
    if (a.n) {
        cfg.n = a.n;
        if (spec.a_n_source == "rsqrt") cfg.a_n = 1.0 / std::sqrt(double(a.n));
        if (spec.a_n_source == "rsqrt_log2") {
            double lg = std::log(std::sqrt(double(a.n)));
            cfg.a_n = 1.0 / (std::sqrt(double(a.n)) * lg * lg);
        }
    }
    if (a.workers) cfg.workers = a.workers;
    cfg.policy = policy_from_string(a.policy);

    json report_json;
    if (spec.problem) {
        AnalyzeOptions opts;
        opts.seed = cfg.master_seed;
        AsymptoticReport rep = analyze(spec.problem->population, spec.problem->loss, opts);
        if (spec.a_n_source == "report")
            cfg.a_n = normalizing_sequence(spec.problem->population, spec.problem->loss, rep,
                                           double(cfg.n));
        if (!sj.contains("m")) cfg.m = rep.m;
        if (!sj.contains("law")) cfg.law = build_limit_law(rep);
        report_json = report_to_json(rep, spec.problem->population, spec.problem->loss);
    }

    SimResult res = run(cfg);
    json out = sim_result_to_json(res);
    out["a_n_source"] = spec.a_n_source;
    if (!report_json.is_null()) out["report"] = report_json;
    emit(out, a.out);
    if (!a.csv.empty()) residuals_to_csv(a.csv, res);
    std::cerr << "ks=" << res.ks << " runtime=" << res.runtime_seconds << "s\n";
    return 0;
}

int cmd_catalog(const CliArgs& a) {
    json out{
        {"losses",
         {{{"id", "square"}, {"params", json::array()}},
          {{"id", "check"}, {"params", {"alpha in (0,1)"}}},
          {{"id", "lp"}, {"params", {"p > 1"}}},
          {{"id", "sigmoid_normal"}, {"params", json::array()}},
          {{"id", "sigmoid_cauchy"}, {"params", json::array()}},
          {{"id", "three_step"}, {"params", {"alpha < 0", "0 < beta < gamma", "r > 0"}}}}},
        {"kernels",
         {{{"id", "identity"}, {"degree", 1}},
          {{"id", "walsh"}, {"degree", "l (default 2)"}},
          {{"id", "mws"}, {"degree", 2}, {"params", {"beta > 0"}}},
          {{"id", "abs_diff"}, {"degree", 2}},
          {{"id", "theil_sen"}, {"degree", 2}, {"dim", 2}}}},
        {"distributions",
         {{{"family", "normal"}, {"params", {"mu", "sigma"}}},
          {{"family", "cauchy"}, {"params", {"loc", "scale"}}},
          {{"family", "exponential"}, {"params", {"rate"}}},
          {{"family", "uniform"}, {"params", {"a", "b"}}},
          {{"family", "smirnov"}, {"params", {"eps in (0, e^-2)"}}},
          {{"family", "piecewise"}, {"knots", "[[x, F], ...]"}, {"interp", "linear | {power, anchor}"}}}},
        {"defaults", defaults_to_json()}};
    emit(out, a.out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"M-estimation via minimizers of convex U-processes"};
    app.require_subcommand(1);
    CliArgs a;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", a.config, "JSON config path");
        sub->add_option("--out", a.out, "write the JSON result here as well");
        sub->add_option("--seed", a.seed, "master seed")->each([&](const std::string&) {
            a.seed_set = true;
        });
    };

    auto* est = app.add_subcommand("estimate", "minimizer interval from CSV data");
    add_common(est);
    est->add_option("--data", a.data, "CSV data, one observation per row")->required();
    est->add_option("--policy", a.policy, "smallest|largest|midpoint");

    auto* ana = app.add_subcommand("analyze", "population-level asymptotic report");
    add_common(ana);
    ana->add_option("--vcsv", a.vcsv, "write (t, V(m+t)) pairs to this CSV");

    auto* sim = app.add_subcommand("simulate", "seeded Monte Carlo verification");
    add_common(sim);
    sim->add_option("--csv", a.csv, "write residual/ecdf/H rows to this CSV");
    sim->add_option("--policy", a.policy, "smallest|largest|midpoint");
    sim->add_option("--reps", a.reps, "override replication count");
    sim->add_option("--n", a.n, "override sample size");
    sim->add_option("--workers", a.workers, "worker count");

    auto* cat = app.add_subcommand("catalog", "list losses, kernels, distributions");
    add_common(cat);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (est->parsed()) {
            if (a.config.empty()) throw parse_error("estimate needs --config");
            return cmd_estimate(a);
        }
        if (ana->parsed()) {
            if (a.config.empty()) throw parse_error("analyze needs --config");
            return cmd_analyze(a);
        }
        if (sim->parsed()) {
            if (a.config.empty()) throw parse_error("simulate needs --config");
            return cmd_simulate(a);
        }
        return cmd_catalog(a);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const non_coercive_loss& e) {
        std::cerr << "non-coercive loss: " << e.what() << "\n";
        return 4;
    } catch (const estimator_failure& e) {
        std::cerr << "estimator failure: " << e.what() << "\n";
        return 6;
    } catch (const analysis_error& e) {
        std::cerr << "analysis error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
}

}  // namespace uproc
