#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uproc/common.hpp"
#include "uproc/distribution.hpp"
#include "uproc/kernel.hpp"
#include "uproc/limit_law.hpp"
#include "uproc/loss.hpp"

namespace uproc {

// Population side of a problem: the law R of k(X), plus the raw observation
// model and kernel when l >= 2 (needed for zeta).
struct PopulationProblem {
    Distribution R;
    int degree = 1;  // l
    std::optional<MultivariateModel> raw;
    std::optional<Kernel> kernel;
};

enum class ClassTag {
    Class1,
    Class2,
    Class3,
    Class4,
    SmoothNormal,
    SubDistribution,
    Degenerate,
    Unclassified,
};

std::string to_string(ClassTag t);

struct AttractionClass {
    ClassTag tag = ClassTag::Unclassified;
    std::optional<double> alpha;
    std::optional<double> c;   // class 1/2: the power coefficient (= 1 under the
                               // constructive a_n); class 3: -1/A
    std::optional<double> d;   // class 3: 1 under the constructive a_n
    std::optional<double> c1;  // class 4 plateau extents
    std::optional<double> c2;
    std::optional<std::pair<double, double>> slopes;  // (D-V(m), D+V(m)) when linear
};

struct RatioDiagnostics {
    std::vector<double> t;        // probe offsets
    std::vector<double> v_right;  // V(m + t)
    std::vector<double> v_left;   // V(m - t)
    std::vector<double> ratio;    // V(m+t) / V(m-t)
    double alpha_raw = 0.0;       // least-squares slope of log|V(m+t)| vs log t
    double r2_raw = 0.0;
    double alpha_corrected = 0.0;  // intercept of local slopes regressed on 1/log t
    double fit_rms = 0.0;
    std::string note;
};

struct DerivativePair {
    double dminus = 0.0;  // extended-real, +inf on divergence
    double dplus = 0.0;
    bool ok_minus = true;  // false when the quotients neither settle nor diverge
    bool ok_plus = true;
};

struct ClassifyOptions {
    double t0 = defaults::grid_t0;
    double ratio = defaults::grid_ratio;
    int levels = defaults::grid_levels;
};

struct AsymptoticReport {
    double m = 0.0;
    bool m_unique = false;
    double zeta = 0.0;
    double zeta_se = 0.0;
    double sigma2 = 0.0;  // l^2 zeta
    double dplus_V = 0.0;
    double dminus_V = 0.0;
    AttractionClass attraction;
    std::string a_n_rule;
    RatioDiagnostics diagnostics;
    int degree = 1;
    std::size_t mc_budget = 0;
    std::uint64_t seed = 0;
};

// V(t) = integral of psi(t - x) R(dx); exact for step generating functions,
// jump-decomposed quadrature otherwise.
double population_V(const PopulationProblem& prob, const ConvexLoss& loss, double t);

// Leftmost point with V(m-) <= 0 <= V(m); unique flags the Lemma-style strict
// sign change (no macroscopic flat spot at level 0).
std::pair<double, bool> find_m(const PopulationProblem& prob, const ConvexLoss& loss);

// zeta: quadrature for l = 1, nested Monte Carlo for l >= 2 (bias-corrected
// variance of inner means; se_out gets the standard error when non-null).
double zeta(const PopulationProblem& prob, const ConvexLoss& loss, double m,
            std::size_t mc_budget = defaults::zeta_budget,
            std::uint64_t seed = defaults::master_seed, double* se_out = nullptr,
            bool left_derivative = false);

DerivativePair one_sided_derivatives(const PopulationProblem& prob, const ConvexLoss& loss,
                                     double m);

double delta_n(const PopulationProblem& prob, const ConvexLoss& loss, double m, double a_n,
               double n, double x);

AttractionClass classify(const PopulationProblem& prob, const ConvexLoss& loss, double m,
                         const ClassifyOptions& opts = {}, RatioDiagnostics* diag = nullptr);

// Generalized inverse V^{-1}(y) = inf{t : V(t) >= y}.
double v_inverse(const PopulationProblem& prob, const ConvexLoss& loss, double m, double y);

// Per-class constructive a_n; needs V through (prob, loss).
double normalizing_sequence(const PopulationProblem& prob, const ConvexLoss& loss,
                            const AsymptoticReport& report, double n);

std::string a_n_rule_string(const AttractionClass& cls);

LimitLaw build_limit_law(const AsymptoticReport& report);

struct AnalyzeOptions {
    std::size_t mc_budget = defaults::zeta_budget;
    std::uint64_t seed = defaults::master_seed;
    ClassifyOptions grid;
};

AsymptoticReport analyze(const PopulationProblem& prob, const ConvexLoss& loss,
                         const AnalyzeOptions& opts = {});

}  // namespace uproc
