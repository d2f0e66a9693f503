#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace uproc {

// One-dimensional law given by its distribution function and generalized
// inverse. Evaluation is pure; sampler state is owned by the caller.
struct Distribution {
    std::string family;
    std::vector<double> params;

    std::function<double(double)> cdf;                      // right-continuous, non-decreasing
    std::function<double(double)> quantile;                 // leftmost generalized inverse on (0,1)
    std::function<double(double)> pdf;                      // empty when no density is available
    double support_lo = -std::numeric_limits<double>::infinity();
    double support_hi = std::numeric_limits<double>::infinity();

    bool has_pdf() const { return static_cast<bool>(pdf); }
    double cdf_left(double x) const;                        // F(x-)
    double sample(std::mt19937_64& rng) const;              // inverse transform
    // optional closed-form mean of the law, when the family admits one
    std::optional<double> mean;
};

enum class ClampRule { linear };

Distribution builtin(const std::string& name, const std::vector<double>& params);

// F(x) = 1/2 + sign(x)|x|(log|x|)^2 on [-eps, eps], F(0) = 1/2, extended
// outside the window with constant slope until it hits 0/1 (linear clamp).
// Requires eps in (0, e^-2) so the window piece is increasing.
Distribution smirnov_cdf(double eps, ClampRule clamp = ClampRule::linear);

struct Segment {
    enum class Kind { linear, power } kind = Kind::linear;
    double exponent = 1.0;
    bool anchor_left = true;  // power segments: which knot the power law is anchored at
};

// CDF through the given (x, F) knots with per-segment interpolation.
// First/last knot must carry F = 0 / F = 1.
Distribution piecewise_cdf(const std::vector<std::pair<double, double>>& knots,
                           const std::vector<Segment>& segments);
Distribution piecewise_cdf(const std::vector<std::pair<double, double>>& knots);  // all linear

// Raw-observation model: independent coordinates, one Distribution each.
struct MultivariateModel {
    std::size_t dim = 1;
    std::vector<Distribution> components;  // size dim

    void sample_row(std::mt19937_64& rng, double* out) const;
};

}  // namespace uproc
