#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "uproc/common.hpp"
#include "uproc/distribution.hpp"
#include "uproc/estimator.hpp"
#include "uproc/kernel.hpp"
#include "uproc/limit_law.hpp"
#include "uproc/loss.hpp"

namespace uproc {

struct SimConfig {
    ConvexLoss loss;
    Kernel kernel;
    MultivariateModel raw;
    std::size_t n = 100;
    std::size_t reps = 1000;
    Policy policy = Policy::midpoint;
    double m = 0.0;        // population minimizer the residuals are centered at
    double a_n = 0.0;      // normalizing constant for this n (resolved by the caller)
    LimitLaw law;
    std::uint64_t master_seed = defaults::master_seed;
    int workers = 1;
    bool all_policies = false;  // also collect smallest/largest residual ECDFs
    std::size_t cap = defaults::enumeration_cap;
};

// Empirical law of the residuals (selected - m) / a_n. Residuals beyond the
// clip bound are tallied as mass at -inf / +inf.
struct EmpiricalCDF {
    std::vector<double> residuals;  // finite entries, sorted
    std::size_t count_minus_inf = 0;
    std::size_t count_plus_inf = 0;

    std::size_t total() const { return residuals.size() + count_minus_inf + count_plus_inf; }
    double value_at(double x) const;       // ECDF(x)
    double value_left(double x) const;     // ECDF(x-)
    static EmpiricalCDF from_residuals(std::vector<double> raw,
                                       double clip = defaults::residual_clip);
};

struct SimResult {
    EmpiricalCDF ecdf;
    double ks = 0.0;
    double cvm = 0.0;  // Cramer-von Mises, secondary diagnostic
    LimitLaw law;
    std::optional<std::array<EmpiricalCDF, 3>> per_policy;  // smallest, largest, midpoint
    std::uint64_t master_seed = 0;
    double runtime_seconds = 0.0;
    std::size_t n = 0, reps = 0;
    double m = 0.0, a_n = 0.0;
};

SimResult run(const SimConfig& config);

double ks_distance(const EmpiricalCDF& ecdf, const LimitLaw& law);
double cvm_distance(const EmpiricalCDF& ecdf, const LimitLaw& law);
double ks_two_sample(const EmpiricalCDF& a, const EmpiricalCDF& b);

// Max pairwise KS distance among the smallest/largest/midpoint residual ECDFs,
// computed on shared datasets.
double policy_agreement(const SimConfig& config);

}  // namespace uproc
