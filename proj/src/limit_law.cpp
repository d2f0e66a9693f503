#include "uproc/limit_law.hpp"

#include <cmath>
#include <limits>

#include "uproc/common.hpp"
#include "uproc/stats.hpp"

namespace uproc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double branch_value(LimitLaw::Branch b, double coef, double alpha, double x, bool negative_side) {
    switch (b) {
        case LimitLaw::Branch::Infinite: return negative_side ? -kInf : kInf;
        case LimitLaw::Branch::Zero: return 0.0;
        default: break;
    }
    double mag = coef * std::pow(std::abs(x), alpha);
    return negative_side ? -mag : mag;
}
}  // namespace

double LimitLaw::delta(double x) const {
    if (x < -c1) return branch_value(neg, coef_neg, alpha, x, true);
    if (x < c2) return 0.0;
    return branch_value(pos, coef_pos, alpha, x, false);
}

double LimitLaw::delta_left(double x) const {
    if (x <= -c1) return branch_value(neg, coef_neg, alpha, x, true);
    if (x <= c2) return 0.0;
    return branch_value(pos, coef_pos, alpha, x, false);
}

double LimitLaw::cdf(double x) const {
    if (std::isinf(x)) return x > 0 ? 1.0 : mass_at_infinity().first;
    return normal_cdf(delta(x), 0.0, sigma);
}

double LimitLaw::cdf_left(double x) const {
    return normal_cdf(delta_left(x), 0.0, sigma);
}

std::pair<double, double> LimitLaw::mass_at_infinity() const {
    double p_minus = neg == Branch::Zero ? 0.5 : 0.0;
    double p_plus = pos == Branch::Zero ? 0.5 : 0.0;
    return {p_minus, p_plus};
}

double LimitLaw::quantile(double p) const {
    if (neg != Branch::Power || pos != Branch::Power || c1 != 0.0 || c2 != 0.0)
        throw analysis_error("LimitLaw::quantile requires a two-sided power law");
    if (!(p > 0.0 && p < 1.0)) throw analysis_error("LimitLaw::quantile needs p in (0,1)");
    double z = normal_quantile(p, 0.0, sigma);
    if (z == 0.0) return 0.0;
    if (z > 0.0) return std::pow(z / coef_pos, 1.0 / alpha);
    return -std::pow(-z / coef_neg, 1.0 / alpha);
}

LimitLaw LimitLaw::normal(double variance) {
    LimitLaw law;
    law.sigma = std::sqrt(variance);
    return law;
}

double limit_cdf(const LimitLaw& law, double x) { return law.cdf(x); }

double functional_equation_residual(const LimitLaw& law, int k, double alpha_k,
                                    const std::vector<double>& grid) {
    double sk = std::sqrt(double(k));
    double worst = 0.0;
    for (double x : grid) {
        double a = law.delta(x);
        double b = law.delta(alpha_k * x);
        if (std::isinf(a) || std::isinf(b)) {
            bool match = std::isinf(a) && std::isinf(b) && ((a > 0) == (b > 0));
            if (!match) return kInf;
            continue;
        }
        worst = std::max(worst, std::abs(a - sk * b));
    }
    return worst;
}

std::vector<double> default_residual_grid(const LimitLaw& law, std::size_t points) {
    // log-spaced magnitudes on both sides, scaled so plateau laws get probes
    // inside and outside the plateau
    double scale = std::max({1.0, law.c1, law.c2});
    std::size_t half = points / 2;
    std::vector<double> g;
    g.reserve(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        double mag = scale * std::pow(10.0, -3.0 + 4.0 * double(i) / double(half - 1));
        g.push_back(-mag);
        g.push_back(mag);
    }
    return g;
}

double alpha_k_for(const LimitLaw& law, int k) {
    if (law.neg == LimitLaw::Branch::Infinite && law.pos == LimitLaw::Branch::Infinite)
        return 1.0;  // plateau solution
    return std::pow(double(k), -1.0 / (2.0 * law.alpha));
}

}  // namespace uproc
