#pragma once

#include <utility>
#include <vector>

namespace uproc {

// Limit distribution H(x) = Phi_sigma(delta(x)) with delta a piecewise power:
//   delta(x) = neg branch for x < -c1, 0 on [-c1, c2), pos branch for x >= c2.
// Classes 1-3 and the one-sided linear laws have c1 = c2 = 0; class 4 uses
// Infinite branches with a positive plateau. Zero branches put mass 1/2 at the
// corresponding infinity (sub-distributions).
struct LimitLaw {
    enum class Branch { Infinite, Zero, Power };

    double sigma = 1.0;
    Branch neg = Branch::Power;
    Branch pos = Branch::Power;
    double coef_neg = 1.0;  // delta(x) = -coef_neg |x|^alpha on the negative branch
    double coef_pos = 1.0;  // delta(x) =  coef_pos x^alpha on the positive branch
    double alpha = 1.0;
    double c1 = 0.0;  // plateau extent below zero
    double c2 = 0.0;  // plateau extent above zero

    double delta(double x) const;       // rcll version
    double delta_left(double x) const;  // left limits
    double cdf(double x) const;         // H(x), right-continuous
    double cdf_left(double x) const;    // H(x-)
    std::pair<double, double> mass_at_infinity() const;  // (P(Y=-inf), P(Y=+inf))
    double quantile(double p) const;    // power/power laws only

    // H = Phi_sigma(x), i.e. N(0, variance) limit
    static LimitLaw normal(double variance);
};

double limit_cdf(const LimitLaw& law, double x);

// max over the grid of |delta(x) - sqrt(k) delta(alpha_k x)|, infinities of the
// same sign counting as a match.
double functional_equation_residual(const LimitLaw& law, int k, double alpha_k,
                                    const std::vector<double>& grid);
std::vector<double> default_residual_grid(const LimitLaw& law, std::size_t points = 100);

// alpha_k = k^{-1/(2 alpha)} for power laws, 1 for plateau laws.
double alpha_k_for(const LimitLaw& law, int k);

}  // namespace uproc
