#include "uproc/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

namespace uproc {

double EmpiricalCDF::value_at(double x) const {
    auto it = std::upper_bound(residuals.begin(), residuals.end(), x);
    return double(count_minus_inf + std::size_t(it - residuals.begin())) / double(total());
}

double EmpiricalCDF::value_left(double x) const {
    auto it = std::lower_bound(residuals.begin(), residuals.end(), x);
    return double(count_minus_inf + std::size_t(it - residuals.begin())) / double(total());
}

EmpiricalCDF EmpiricalCDF::from_residuals(std::vector<double> raw, double clip) {
    EmpiricalCDF e;
    for (double r : raw) {
        if (r < -clip)
            ++e.count_minus_inf;
        else if (r > clip)
            ++e.count_plus_inf;
        else
            e.residuals.push_back(r);
    }
    std::sort(e.residuals.begin(), e.residuals.end());
    return e;
}

namespace {

struct RepOutcome {
    double smallest, largest, midpoint;
};

// One replication: fresh dataset from the raw model, full estimator pass.
RepOutcome replicate(const SimConfig& cfg, std::size_t rep) {
    std::mt19937_64 rng(mix_seed(cfg.master_seed, rep));
    Dataset data;
    data.n = cfg.n;
    data.dim = cfg.raw.dim;
    data.values.resize(cfg.n * cfg.raw.dim);
    for (std::size_t i = 0; i < cfg.n; ++i) cfg.raw.sample_row(rng, data.values.data() + i * data.dim);
    KernelSample ks = kernel_sample(data, cfg.kernel, cfg.cap);
    MinimizerInterval mi = argmin_interval(ks, cfg.loss, Policy::midpoint);
    return {mi.smallest, mi.largest, 0.5 * (mi.smallest + mi.largest)};
}

}  // namespace

SimResult run(const SimConfig& cfg) {
    if (cfg.reps < 1) throw parse_error("reps must be >= 1");
    if (!(cfg.a_n > 0.0)) throw parse_error("a_n must be positive");
    binomial_or_throw(cfg.n, (std::size_t)cfg.kernel.degree, cfg.cap);

    auto t_start = std::chrono::steady_clock::now();
    std::vector<RepOutcome> outcomes(cfg.reps);
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const int workers = std::max(1, cfg.workers);
    auto work = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            try {
                outcomes[r] = replicate(cfg, r);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(failure_mutex);
                if (!failure)
                    failure = std::make_exception_ptr(
                        estimator_failure(e.what(), r, mix_seed(cfg.master_seed, r)));
                return;
            }
        }
    };
    if (workers == 1) {
        work(0, cfg.reps);
    } else {
        std::vector<std::thread> pool;
        std::size_t block = (cfg.reps + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            std::size_t lo = std::min<std::size_t>(cfg.reps, w * block);
            std::size_t hi = std::min<std::size_t>(cfg.reps, lo + block);
            if (lo < hi) pool.emplace_back(work, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    auto residuals_for = [&](Policy p) {
        std::vector<double> res(cfg.reps);
        for (std::size_t r = 0; r < cfg.reps; ++r) {
            double sel = p == Policy::smallest ? outcomes[r].smallest
                         : p == Policy::largest ? outcomes[r].largest
                                                : outcomes[r].midpoint;
            res[r] = (sel - cfg.m) / cfg.a_n;
        }
        return res;
    };

    SimResult out;
    out.law = cfg.law;
    out.master_seed = cfg.master_seed;
    out.n = cfg.n;
    out.reps = cfg.reps;
    out.m = cfg.m;
    out.a_n = cfg.a_n;
    out.ecdf = EmpiricalCDF::from_residuals(residuals_for(cfg.policy));
    out.ks = ks_distance(out.ecdf, cfg.law);
    out.cvm = cvm_distance(out.ecdf, cfg.law);
    if (cfg.all_policies) {
        out.per_policy = {EmpiricalCDF::from_residuals(residuals_for(Policy::smallest)),
                          EmpiricalCDF::from_residuals(residuals_for(Policy::largest)),
                          EmpiricalCDF::from_residuals(residuals_for(Policy::midpoint))};
    }
    out.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

double ks_distance(const EmpiricalCDF& ecdf, const LimitLaw& law) {
    if (ecdf.total() == 0) throw analysis_error("empty empirical cdf");
    auto [p_minus, p_plus] = law.mass_at_infinity();
    double total = double(ecdf.total());
    // mass tallies beyond the clip bound vs the law's mass at +-infinity
    double sup = std::max(std::abs(double(ecdf.count_minus_inf) / total - p_minus),
                          std::abs(double(ecdf.count_plus_inf) / total - p_plus));
    // two-sided evaluation at every jump point of either function
    std::vector<double> points = ecdf.residuals;
    points.push_back(0.0);
    points.push_back(-law.c1);
    points.push_back(law.c2);
    for (double x : points) {
        sup = std::max(sup, std::abs(ecdf.value_at(x) - law.cdf(x)));
        sup = std::max(sup, std::abs(ecdf.value_left(x) - law.cdf_left(x)));
    }
    return sup;
}

double cvm_distance(const EmpiricalCDF& ecdf, const LimitLaw& law) {
    const auto& r = ecdf.residuals;
    if (r.empty()) return 0.0;
    double n = double(r.size());
    double acc = 1.0 / (12.0 * n);
    for (std::size_t i = 0; i < r.size(); ++i) {
        double d = (2.0 * double(i) + 1.0) / (2.0 * n) - law.cdf(r[i]);
        acc += d * d;
    }
    return acc / n;
}

double ks_two_sample(const EmpiricalCDF& a, const EmpiricalCDF& b) {
    double sup = std::max(std::abs(double(a.count_minus_inf) / double(a.total()) -
                                   double(b.count_minus_inf) / double(b.total())),
                          std::abs(double(a.count_plus_inf) / double(a.total()) -
                                   double(b.count_plus_inf) / double(b.total())));
    for (const auto* src : {&a, &b})
        for (double x : src->residuals) {
            sup = std::max(sup, std::abs(a.value_at(x) - b.value_at(x)));
            sup = std::max(sup, std::abs(a.value_left(x) - b.value_left(x)));
        }
    return sup;
}

double policy_agreement(const SimConfig& config) {
    if (config.reps < 500) throw parse_error("policy_agreement needs reps >= 500");
    SimConfig cfg = config;
    cfg.all_policies = true;
    SimResult res = run(cfg);
    const auto& p = *res.per_policy;
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) worst = std::max(worst, ks_two_sample(p[i], p[j]));
    return worst;
}

}  // namespace uproc
