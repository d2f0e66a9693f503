#include "uproc/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "uproc/stats.hpp"

namespace uproc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlatTol = 1e-9;      // |V| below this counts as "at level 0"
constexpr double kPlateauMin = 1e-4;   // smaller flat spots are treated as numeric

double step_expectation(const Distribution& R, const StepSpec& s, double t,
                        const std::vector<double>& levels, bool left_limits) {
    // E[g(t - X)] for the step function g with the given levels
    double acc = levels.front();
    for (std::size_t j = 0; j < s.jumps.size(); ++j) {
        double p = left_limits ? R.cdf_left(t - s.jumps[j]) : R.cdf(t - s.jumps[j]);
        acc += (levels[j + 1] - levels[j]) * p;
    }
    return acc;
}

bool exact_V(const ConvexLoss& loss) { return loss.step.has_value(); }

}  // namespace

std::string to_string(ClassTag t) {
    switch (t) {
        case ClassTag::Class1: return "Class1";
        case ClassTag::Class2: return "Class2";
        case ClassTag::Class3: return "Class3";
        case ClassTag::Class4: return "Class4";
        case ClassTag::SmoothNormal: return "SmoothNormal";
        case ClassTag::SubDistribution: return "SubDistribution";
        case ClassTag::Degenerate: return "Degenerate";
        default: return "Unclassified";
    }
}

double population_V(const PopulationProblem& prob, const ConvexLoss& loss, double t) {
    if (loss.step) return step_expectation(prob.R, *loss.step, t, loss.step->levels, false);

    // V(t) = kappa F(t) + V_c(t) + kappa_-, with V_c integrated through the
    // quantile transform; psi_c vanishes at 0, so the integrand is continuous.
    auto jd = jump_decompose(loss);
    const auto& Q = prob.R.quantile;
    double quad = integrate01([&](double u) { return jd.psi_c(t - Q(u)); }, defaults::quad_tol);
    return jd.kappa * prob.R.cdf(t) + jd.kappa_minus + quad;
}

std::pair<double, bool> find_m(const PopulationProblem& prob, const ConvexLoss& loss) {
    auto V = [&](double t) { return population_V(prob, loss, t); };

    double lo = prob.R.quantile(0.05) - 1.0;
    double hi = prob.R.quantile(0.95) + 1.0;
    double w = std::max(1.0, hi - lo);
    int grow = 0;
    while (V(lo) >= 0.0) {
        lo -= w;
        w *= 2;
        if (++grow > 60) throw analysis_error("V has no sign change: V(t) >= 0 everywhere probed");
    }
    w = std::max(1.0, hi - lo);
    grow = 0;
    while (V(hi) < 0.0) {
        hi += w;
        w *= 2;
        if (++grow > 60) throw analysis_error("V has no sign change: V(t) < 0 everywhere probed");
    }
    double m = bisect_leftmost([&](double t) { return V(t) >= 0.0; }, lo, hi,
                               defaults::bisect_tol);

    // uniqueness: no macroscopic flat spot of V at level 0 around m.
    // A flat spot is "real" when V jumps sharply past its edge; a steep power
    // law exits gradually and stays unique.
    auto flat_extent = [&](int side) {
        double eta = 1e-7;
        auto val = [&](double e) { return side > 0 ? V(m + e) : -V(m - e); };
        if (val(eta) > kFlatTol) return 0.0;
        while (val(eta) <= kFlatTol) {
            eta *= 2.0;
            if (eta > 1e6) return kInf;
        }
        return bisect_rightmost([&](double e) { return val(e) <= kFlatTol; }, eta / 2.0, eta,
                                1e-6 * eta);
    };
    bool unique = true;
    for (int side : {+1, -1}) {
        double ext = flat_extent(side);
        if (std::isinf(ext)) { unique = false; continue; }
        if (ext > kPlateauMin) {
            double exit_v = side > 0 ? V(m + 2.0 * ext) : -V(m - 2.0 * ext);
            if (exit_v > kFlatTol * double(1 << 26)) unique = false;
        }
    }
    return {m, unique};
}

double zeta(const PopulationProblem& prob, const ConvexLoss& loss, double m,
            std::size_t mc_budget, std::uint64_t seed, double* se_out, bool left) {
    const double zeta_floor = 1e-12;
    if (prob.degree <= 1) {
        double z;
        if (loss.step) {
            std::vector<double> sq(loss.step->levels.size());
            for (std::size_t i = 0; i < sq.size(); ++i)
                sq[i] = loss.step->levels[i] * loss.step->levels[i];
            z = step_expectation(prob.R, *loss.step, m, sq, left);
        } else {
            auto jd = jump_decompose(loss);
            const auto& Q = prob.R.quantile;
            double kp = jd.kappa_plus, km = jd.kappa_minus;
            auto psi_c = left ? jd.psi_c_minus : jd.psi_c;
            // psi^2 = psi_c^2 + 2 psi_c * jump-part + jump-part^2; the cross
            // term is continuous because psi_c(0) = 0
            auto jump_part = [kp, km, left](double u) {
                bool upper = left ? (u > 0) : (u >= 0);
                return upper ? kp : km;
            };
            double sq = integrate01(
                [&](double u) { double v = psi_c(m - Q(u)); return v * v; }, defaults::quad_tol);
            double cross = 0.0;
            if (kp != 0.0 || km != 0.0) {
                cross = 2.0 * integrate01(
                                  [&](double u) {
                                      double a = m - Q(u);
                                      return psi_c(a) * jump_part(a);
                                  },
                                  defaults::quad_tol);
            }
            double Fm = left ? prob.R.cdf_left(m) : prob.R.cdf(m);
            double pure = kp * kp * Fm + km * km * (1.0 - Fm);
            z = sq + cross + pure;
        }
        if (se_out) *se_out = 0.0;
        if (z <= zeta_floor)
            throw analysis_error("zeta is numerically zero; condition (A3) fails (degenerate problem)");
        return z;
    }

    if (!prob.raw || !prob.kernel)
        throw analysis_error("zeta for l >= 2 needs the raw observation model and kernel");
    const auto& model = *prob.raw;
    const auto& kern = *prob.kernel;
    const int l = prob.degree;
    const std::size_t B = (std::size_t)std::ceil(std::sqrt((double)std::max<std::size_t>(mc_budget, 16)));
    auto psi = left ? loss.psi_minus : loss.psi_plus;

    std::vector<double> means(B), vars(B);
    std::vector<double> x_row(model.dim);
    std::vector<double> inner_rows((std::size_t)(l - 1) * model.dim);
    std::vector<const double*> args(l);
    for (std::size_t i = 0; i < B; ++i) {
        std::mt19937_64 rng(mix_seed(seed, i));
        model.sample_row(rng, x_row.data());
        args[0] = x_row.data();
        double s = 0.0, s2 = 0.0;
        for (std::size_t j = 0; j < B; ++j) {
            for (int a = 1; a < l; ++a) {
                model.sample_row(rng, inner_rows.data() + (std::size_t)(a - 1) * model.dim);
                args[a] = inner_rows.data() + (std::size_t)(a - 1) * model.dim;
            }
            double val = psi(m - kern.eval(std::span<const double* const>(args.data(), l), model.dim));
            s += val;
            s2 += val * val;
        }
        means[i] = s / double(B);
        vars[i] = std::max(0.0, s2 / double(B) - means[i] * means[i]);
    }
    double grand = std::accumulate(means.begin(), means.end(), 0.0) / double(B);
    double var_means = 0.0, m4 = 0.0;
    for (double v : means) {
        double d2 = (v - grand) * (v - grand);
        var_means += d2;
        m4 += d2 * d2;
    }
    var_means /= double(B);
    m4 /= double(B);
    double inner_bias = std::accumulate(vars.begin(), vars.end(), 0.0) / double(B) / double(B);
    double z = std::max(0.0, var_means - inner_bias);
    if (se_out) *se_out = std::sqrt(std::max(0.0, m4 - var_means * var_means) / double(B));
    if (z <= zeta_floor)
        throw analysis_error("zeta is numerically zero; condition (A3) fails (degenerate problem)");
    return z;
}

namespace {

struct QuotientScan {
    double value = 0.0;
    bool converged = false;
    bool diverged = false;
};

QuotientScan scan_quotients(const std::vector<double>& q) {
    QuotientScan out;
    if (q.empty()) return out;
    for (double v : q)
        if (std::abs(v) > defaults::derivative_cap) {
            out.diverged = true;
            out.value = kInf;
            return out;
        }
    // Neville extrapolation in powers of h with ratio 2
    std::vector<std::vector<double>> T(q.size());
    T[0] = {q[0]};
    for (std::size_t j = 1; j < q.size(); ++j) {
        T[j].resize(j + 1);
        T[j][0] = q[j];
        double pw = 1.0;
        for (std::size_t k = 1; k <= j; ++k) {
            pw *= 2.0;
            T[j][k] = (pw * T[j][k - 1] - T[j - 1][k - 1]) / (pw - 1.0);
        }
    }
    double best = T.back().back();
    double prev = T[q.size() - 2].back();
    double scale = std::max({1e-12, std::abs(best), std::abs(prev)});
    if (std::abs(best - prev) <= std::max(1e-8, 1e-5 * scale)) {
        out.converged = true;
        out.value = best;
        return out;
    }
    // monotone growth of the raw quotients as h shrinks means the one-sided
    // derivative is +inf (V steeper than linear at every scale)
    bool monotone = true;
    for (std::size_t j = 0; j + 1 < q.size(); ++j)
        if (q[j + 1] <= q[j] * 1.0001) monotone = false;
    if (monotone && q.front() > 0.0 && q.back() / q.front() >= 3.0) {
        out.diverged = true;
        out.value = kInf;
        return out;
    }
    out.value = best;
    return out;
}

}  // namespace

DerivativePair one_sided_derivatives(const PopulationProblem& prob, const ConvexLoss& loss,
                                     double m) {
    auto V = [&](double t) { return population_V(prob, loss, t); };
    double vm = V(m);
    std::vector<double> hp, hm;
    for (int j = 0; j < defaults::richardson_levels; ++j)
        hp.push_back(defaults::richardson_h0 * std::pow(2.0, -j));
    std::vector<double> qp, qm;
    for (double h : hp) {
        qp.push_back((V(m + h) - vm) / h);
        qm.push_back((vm - V(m - h)) / h);
    }
    auto sp = scan_quotients(qp);
    auto sm = scan_quotients(qm);
    DerivativePair out;
    out.dplus = sp.value;
    out.dminus = sm.value;
    out.ok_plus = sp.converged || sp.diverged;
    out.ok_minus = sm.converged || sm.diverged;
    return out;
}

double delta_n(const PopulationProblem& prob, const ConvexLoss& loss, double m, double a_n,
               double n, double x) {
    if (!(a_n > 0.0)) throw analysis_error("delta_n needs a_n > 0");
    return std::sqrt(n) * population_V(prob, loss, m + a_n * x);
}

namespace {

struct SideFit {
    double alpha_raw = 0.0;
    double r2_raw = 0.0;
    double alpha = 0.0;  // corrected intercept
    double rms = kInf;
    bool ok = false;
};

// alpha from log|V(m+t)| vs log t, with a 1/log t correction term so slowly
// varying factors like (log t)^2 do not bias the exponent.
SideFit fit_power(const std::vector<double>& ts, const std::vector<double>& vs) {
    SideFit out;
    std::vector<double> u, y;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (std::abs(vs[i]) <= 0.0) continue;
        u.push_back(std::log(ts[i]));
        y.push_back(std::log(std::abs(vs[i])));
    }
    if (u.size() < 5) return out;
    std::size_t keep = std::min<std::size_t>(u.size(), 10);
    std::vector<double> uu(u.end() - keep, u.end());
    std::vector<double> yy(y.end() - keep, y.end());
    auto raw = linear_fit(uu, yy);
    out.alpha_raw = raw.slope;
    out.r2_raw = raw.r2;

    std::vector<double> sx, sy;
    for (std::size_t i = 0; i + 1 < uu.size(); ++i) {
        double du = uu[i + 1] - uu[i];
        if (du == 0.0) continue;
        sx.push_back(2.0 / (uu[i + 1] + uu[i]));  // 1 / midpoint log t
        sy.push_back((yy[i + 1] - yy[i]) / du);
    }
    if (sx.size() < 4) return out;
    auto corr = linear_fit(sx, sy);
    out.alpha = corr.intercept;
    out.rms = corr.rms_residual;
    out.ok = raw.r2 >= 0.999 && corr.rms_residual <= std::max(0.01, 0.01 * std::abs(out.alpha)) &&
             out.alpha > 0.05 && out.alpha < 50.0;
    return out;
}

struct Trace {
    std::vector<double> t, vr, vl;
    std::vector<std::size_t> valid;  // indices with both sides above the floor
};

Trace make_trace(const PopulationProblem& prob, const ConvexLoss& loss, double m,
                 const ClassifyOptions& opts, double floor) {
    Trace tr;
    for (int j = 0; j < opts.levels; ++j) {
        double t = opts.t0 * std::pow(opts.ratio, j);
        tr.t.push_back(t);
        tr.vr.push_back(population_V(prob, loss, m + t));
        tr.vl.push_back(population_V(prob, loss, m - t));
    }
    for (std::size_t j = 0; j < tr.t.size(); ++j)
        if (std::abs(tr.vr[j]) > floor && std::abs(tr.vl[j]) > floor) tr.valid.push_back(j);
    return tr;
}

bool last_k_below(const std::vector<double>& xs, std::size_t k, double bound) {
    if (xs.size() < k) return false;
    for (std::size_t i = xs.size() - k; i < xs.size(); ++i)
        if (!(std::abs(xs[i]) < bound)) return false;
    return std::abs(xs.back()) <= std::abs(xs[xs.size() - k]);
}

}  // namespace

AttractionClass classify(const PopulationProblem& prob, const ConvexLoss& loss, double m,
                         const ClassifyOptions& opts, RatioDiagnostics* diag) {
    AttractionClass out;
    RatioDiagnostics local;
    RatioDiagnostics& dg = diag ? *diag : local;
    auto V = [&](double t) { return population_V(prob, loss, t); };
    const double floor = exact_V(loss) ? 1e-12 : 50.0 * defaults::quad_tol;

    // plateau of V at level 0 around m -> class 4
    auto flat_extent = [&](int side) {
        double eta = 1e-7;
        auto val = [&](double e) { return side > 0 ? V(m + e) : -V(m - e); };
        if (val(eta) > kFlatTol) return 0.0;
        while (val(eta) <= kFlatTol) {
            eta *= 2.0;
            if (eta > 1e6) throw analysis_error("V is flat at level 0 on an unbounded set");
        }
        return bisect_rightmost([&](double e) { return val(e) <= kFlatTol; }, eta / 2.0, eta,
                                1e-6 * eta);
    };
    double wl = flat_extent(-1), wr = flat_extent(+1);
    if (std::max(wl, wr) > kPlateauMin) {
        double edge = std::max(wl, wr);
        double exit_v = wr >= wl ? V(m + 2.0 * wr) : -V(m - 2.0 * wl);
        if (exit_v > kFlatTol * double(1 << 26)) {
            out.tag = ClassTag::Class4;
            out.c1 = wl;
            out.c2 = wr;
            dg.note = "plateau detected, extents (" + std::to_string(wl) + ", " +
                      std::to_string(wr) + ")";
            return out;
        }
        dg.note = "flat spot of extent " + std::to_string(edge) + " with gradual exit";
    }

    // smooth shortcut from the one-sided derivatives
    auto dv = one_sided_derivatives(prob, loss, m);
    const double zero_tol = 1e-7;
    if (dv.ok_plus && dv.ok_minus && std::isfinite(dv.dplus) && std::isfinite(dv.dminus)) {
        double sp = std::max(0.0, dv.dplus), sm = std::max(0.0, dv.dminus);
        bool zp = sp <= zero_tol, zm = sm <= zero_tol;
        if (!zp && !zm) {
            out.slopes = std::make_pair(sm, sp);
            out.alpha = 1.0;
            if (std::abs(sp - sm) <= 1e-3 * std::max(sp, sm)) {
                out.tag = ClassTag::SmoothNormal;
                out.c = out.d = 0.5 * (sp + sm);
            } else {
                out.tag = ClassTag::Class3;
                out.c = sm / sp;  // -1/A with A = -s+/s-
                out.d = 1.0;
            }
            return out;
        }
        if (zp != zm) {
            out.tag = ClassTag::SubDistribution;
            out.slopes = std::make_pair(zm ? 0.0 : sm, zp ? 0.0 : sp);
            return out;
        }
        // both slopes vanish: fall through to the ratio tests
    }

    // ratio tests on the geometric grid
    ClassifyOptions pass = opts;
    for (int attempt = 0; attempt < 2; ++attempt) {
        Trace tr = make_trace(prob, loss, m, pass, floor);
        dg.t = tr.t;
        dg.v_right = tr.vr;
        dg.v_left = tr.vl;
        dg.ratio.clear();
        std::vector<double> r;
        std::vector<double> ts_r, vs_r, ts_l, vs_l;
        for (std::size_t j : tr.valid) {
            r.push_back(tr.vr[j] / tr.vl[j]);
            ts_r.push_back(tr.t[j]);
            vs_r.push_back(tr.vr[j]);
            ts_l.push_back(tr.t[j]);
            vs_l.push_back(tr.vl[j]);
        }
        dg.ratio = r;
        if (r.size() >= 5) {
            auto fit_r = fit_power(ts_r, vs_r);
            auto fit_l = fit_power(ts_l, vs_l);
            dg.alpha_raw = fit_r.alpha_raw;
            dg.r2_raw = fit_r.r2_raw;
            dg.alpha_corrected = fit_r.alpha;
            dg.fit_rms = fit_r.rms;

            std::vector<double> rinv;
            for (double x : r) rinv.push_back(1.0 / x);
            std::vector<double> tail(r.end() - 5, r.end());
            std::vector<double> sorted = tail;
            std::sort(sorted.begin(), sorted.end());
            double med = sorted[2];
            bool stable = med < 0.0;
            for (double x : tail)
                if (std::abs(x - med) > 0.02 * std::abs(med)) stable = false;

            if (last_k_below(r, 5, 1e-3) && fit_r.ok) {
                out.tag = ClassTag::Class1;
                out.alpha = fit_r.alpha;
                out.c = 1.0;
                return out;
            }
            if (last_k_below(rinv, 5, 1e-3) && fit_l.ok) {
                out.tag = ClassTag::Class2;
                out.alpha = fit_l.alpha;
                out.c = 1.0;
                dg.alpha_raw = fit_l.alpha_raw;
                dg.r2_raw = fit_l.r2_raw;
                dg.alpha_corrected = fit_l.alpha;
                dg.fit_rms = fit_l.rms;
                return out;
            }
            if (stable && fit_r.ok && fit_l.ok &&
                std::abs(fit_l.alpha - fit_r.alpha) <= 0.1 * std::max(1.0, fit_r.alpha)) {
                out.tag = ClassTag::Class3;
                out.alpha = fit_r.alpha;
                out.c = -1.0 / med;
                out.d = 1.0;
                return out;
            }
            if (stable && dg.note.empty()) dg.note = "ratio limit found but power fit failed";
        }
        if (attempt == 0) {
            pass.levels *= 2;  // escalate the grid depth once
            continue;
        }
    }
    out.tag = ClassTag::Unclassified;
    if (dg.note.empty()) dg.note = "ratio traces inconsistent across grid levels";
    return out;
}

double v_inverse(const PopulationProblem& prob, const ConvexLoss& loss, double m, double y) {
    auto V = [&](double t) { return population_V(prob, loss, t); };
    double lo = m, hi = m;
    double w = 1e-3;
    int grow = 0;
    while (V(hi) < y) {
        hi += w;
        w *= 2;
        if (++grow > 80)
            throw analysis_error("V^{-1} bracket failure: V never reaches " + std::to_string(y) +
                                 " (n too small for the asymptotic window)");
    }
    w = 1e-3;
    grow = 0;
    while (V(lo) >= y) {
        lo -= w;
        w *= 2;
        if (++grow > 80)
            throw analysis_error("V^{-1} bracket failure: V stays above " + std::to_string(y));
    }
    return bisect_leftmost([&](double t) { return V(t) >= y; }, lo, hi, defaults::bisect_tol);
}

std::string a_n_rule_string(const AttractionClass& cls) {
    switch (cls.tag) {
        case ClassTag::Class1:
        case ClassTag::Class3: return "Vinv(1/sqrt(n))-m";
        case ClassTag::Class2: return "m-Vinv(-1/sqrt(n))";
        case ClassTag::Class4: return "(Vinv(1/sqrt(n))-Vinv(-1/sqrt(n)))/(c1+c2)";
        case ClassTag::SmoothNormal:
        case ClassTag::SubDistribution: return "1/sqrt(n)";
        default: return "undefined";
    }
}

double normalizing_sequence(const PopulationProblem& prob, const ConvexLoss& loss,
                            const AsymptoticReport& report, double n) {
    const double rs = 1.0 / std::sqrt(n);
    switch (report.attraction.tag) {
        case ClassTag::SmoothNormal:
        case ClassTag::SubDistribution: return rs;
        case ClassTag::Class1:
        case ClassTag::Class3: return v_inverse(prob, loss, report.m, rs) - report.m;
        case ClassTag::Class2: return report.m - v_inverse(prob, loss, report.m, -rs);
        case ClassTag::Class4: {
            double c1 = report.attraction.c1.value_or(0.0);
            double c2 = report.attraction.c2.value_or(0.0);
            if (c1 + c2 <= 0.0) throw analysis_error("class 4 report without plateau extents");
            return (v_inverse(prob, loss, report.m, rs) - v_inverse(prob, loss, report.m, -rs)) /
                   (c1 + c2);
        }
        default:
            throw analysis_error("no normalizing sequence for tag " +
                                 to_string(report.attraction.tag));
    }
}

LimitLaw build_limit_law(const AsymptoticReport& report) {
    LimitLaw law;
    law.sigma = std::sqrt(report.sigma2);
    const auto& a = report.attraction;
    switch (a.tag) {
        case ClassTag::SmoothNormal: {
            double s = a.c.value_or(1.0);
            law.alpha = 1.0;
            law.coef_neg = law.coef_pos = s;
            break;
        }
        case ClassTag::SubDistribution: {
            auto [sm, sp] = a.slopes.value();
            law.alpha = 1.0;
            law.neg = sm <= 0.0 ? LimitLaw::Branch::Zero : LimitLaw::Branch::Power;
            law.pos = sp <= 0.0 ? LimitLaw::Branch::Zero : LimitLaw::Branch::Power;
            law.coef_neg = std::max(sm, 0.0);
            law.coef_pos = std::max(sp, 0.0);
            break;
        }
        case ClassTag::Class1:
            law.alpha = a.alpha.value();
            law.neg = LimitLaw::Branch::Infinite;
            law.coef_pos = a.c.value_or(1.0);
            break;
        case ClassTag::Class2:
            law.alpha = a.alpha.value();
            law.pos = LimitLaw::Branch::Infinite;
            law.coef_neg = a.c.value_or(1.0);
            break;
        case ClassTag::Class3:
            law.alpha = a.alpha.value();
            law.coef_neg = a.c.value();
            law.coef_pos = a.d.value_or(1.0);
            break;
        case ClassTag::Class4:
            law.neg = LimitLaw::Branch::Infinite;
            law.pos = LimitLaw::Branch::Infinite;
            law.c1 = a.c1.value();
            law.c2 = a.c2.value();
            break;
        default:
            throw analysis_error("no limit law for tag " + to_string(a.tag));
    }
    return law;
}

AsymptoticReport analyze(const PopulationProblem& prob, const ConvexLoss& loss,
                         const AnalyzeOptions& opts) {
    AsymptoticReport rep;
    rep.degree = prob.degree;
    rep.mc_budget = opts.mc_budget;
    rep.seed = opts.seed;
    auto [m, unique] = find_m(prob, loss);
    rep.m = m;
    rep.m_unique = unique;
    bool degenerate = false;
    try {
        rep.zeta = zeta(prob, loss, m, opts.mc_budget, opts.seed, &rep.zeta_se);
    } catch (const analysis_error&) {
        degenerate = true;
        rep.zeta = 0.0;
    }
    rep.sigma2 = double(prob.degree) * double(prob.degree) * rep.zeta;
    auto dv = one_sided_derivatives(prob, loss, m);
    rep.dplus_V = dv.dplus;
    rep.dminus_V = dv.dminus;
    if (degenerate) {
        rep.attraction.tag = ClassTag::Degenerate;
        rep.a_n_rule = "undefined";
        return rep;
    }
    try {
        rep.attraction = classify(prob, loss, m, opts.grid, &rep.diagnostics);
    } catch (const analysis_error& e) {
        rep.attraction.tag = ClassTag::Unclassified;
        rep.diagnostics.note = e.what();
    }
    rep.a_n_rule = a_n_rule_string(rep.attraction);
    return rep;
}

}  // namespace uproc
