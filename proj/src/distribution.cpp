#include "uproc/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uproc/common.hpp"
#include "uproc/stats.hpp"

namespace uproc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform_open(std::mt19937_64& rng) {
    // draw in (0,1); both endpoints excluded so quantile(u) is always defined
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double u;
    do {
        u = u01(rng);
    } while (u <= 0.0 || u >= 1.0);
    return u;
}
}  // namespace

double Distribution::cdf_left(double x) const {
    return cdf(std::nextafter(x, -kInf));
}

double Distribution::sample(std::mt19937_64& rng) const {
    return quantile(uniform_open(rng));
}

void MultivariateModel::sample_row(std::mt19937_64& rng, double* out) const {
    for (std::size_t j = 0; j < dim; ++j) out[j] = components[j].sample(rng);
}

Distribution builtin(const std::string& name, const std::vector<double>& params) {
    Distribution d;
    d.family = name;
    d.params = params;
    if (name == "normal") {
        double mu = params.size() > 0 ? params[0] : 0.0;
        double sigma = params.size() > 1 ? params[1] : 1.0;
        if (!(sigma > 0)) throw parse_error("normal: sigma must be positive");
        d.cdf = [=](double x) { return normal_cdf(x, mu, sigma); };
        d.quantile = [=](double u) { return normal_quantile(u, mu, sigma); };
        d.pdf = [=](double x) { return normal_pdf(x, mu, sigma); };
        d.mean = mu;
    } else if (name == "cauchy") {
        double loc = params.size() > 0 ? params[0] : 0.0;
        double scale = params.size() > 1 ? params[1] : 1.0;
        if (!(scale > 0)) throw parse_error("cauchy: scale must be positive");
        d.cdf = [=](double x) { return cauchy_cdf(x, loc, scale); };
        d.quantile = [=](double u) { return cauchy_quantile(u, loc, scale); };
        d.pdf = [=](double x) { return cauchy_pdf(x, loc, scale); };
    } else if (name == "exponential") {
        double rate = params.size() > 0 ? params[0] : 1.0;
        if (!(rate > 0)) throw parse_error("exponential: rate must be positive");
        d.cdf = [=](double x) { return x <= 0 ? 0.0 : -std::expm1(-rate * x); };
        d.quantile = [=](double u) { return -std::log1p(-u) / rate; };
        d.pdf = [=](double x) { return x < 0 ? 0.0 : rate * std::exp(-rate * x); };
        d.support_lo = 0.0;
        d.mean = 1.0 / rate;
    } else if (name == "uniform") {
        double a = params.size() > 0 ? params[0] : 0.0;
        double b = params.size() > 1 ? params[1] : 1.0;
        if (!(a < b)) throw parse_error("uniform: need a < b");
        d.cdf = [=](double x) { return x <= a ? 0.0 : x >= b ? 1.0 : (x - a) / (b - a); };
        d.quantile = [=](double u) { return a + u * (b - a); };
        d.pdf = [=](double x) { return (x < a || x > b) ? 0.0 : 1.0 / (b - a); };
        d.support_lo = a;
        d.support_hi = b;
        d.mean = 0.5 * (a + b);
    } else {
        throw parse_error("unknown distribution family: " + name);
    }
    return d;
}

Distribution smirnov_cdf(double eps, ClampRule) {
    const double eps_max = std::exp(-2.0);
    if (!(eps > 0.0 && eps < eps_max))
        throw parse_error("smirnov_cdf: eps must lie in (0, e^-2)");

    // window piece g(x) = x (log x)^2 on (0, eps]; increasing there
    auto g = [](double x) { double l = std::log(x); return x * l * l; };
    const double g_eps = g(eps);
    const double slope = std::log(eps) * (std::log(eps) + 2.0);  // g'(eps) > 0
    const double hi_edge = eps + (0.5 - g_eps) / slope;          // where clamp reaches 1

    Distribution d;
    d.family = "smirnov";
    d.params = {eps};
    d.support_lo = -hi_edge;
    d.support_hi = hi_edge;
    d.cdf = [=](double x) {
        double ax = std::abs(x);
        double half;
        if (ax == 0.0)
            half = 0.0;
        else if (ax <= eps)
            half = g(ax);
        else
            half = std::min(0.5, g_eps + slope * (ax - eps));
        return x >= 0 ? 0.5 + half : 0.5 - half;
    };
    d.quantile = [=, cdf = d.cdf](double u) {
        if (u == 0.5) return 0.0;
        double lo = -hi_edge, hi = hi_edge;
        // leftmost x with F(x) >= u
        while (hi - lo > defaults::bisect_tol) {
            double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (cdf(mid) >= u)
                hi = mid;
            else
                lo = mid;
        }
        return hi;
    };
    return d;
}

Distribution piecewise_cdf(const std::vector<std::pair<double, double>>& knots,
                           const std::vector<Segment>& segments) {
    if (knots.size() < 2) throw parse_error("piecewise_cdf: need at least two knots");
    if (segments.size() != knots.size() - 1)
        throw parse_error("piecewise_cdf: need one segment rule per knot interval");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        if (!(knots[i].first < knots[i + 1].first))
            throw parse_error("piecewise_cdf: knot x-values must be strictly increasing");
        if (knots[i].second > knots[i + 1].second)
            throw parse_error("piecewise_cdf: F values must be non-decreasing");
    }
    for (const auto& [x, F] : knots)
        if (F < 0.0 || F > 1.0) throw parse_error("piecewise_cdf: F values must lie in [0,1]");
    if (knots.front().second != 0.0 || knots.back().second != 1.0)
        throw parse_error("piecewise_cdf: first knot needs F=0 and last knot F=1");
    for (const auto& s : segments)
        if (s.kind == Segment::Kind::power && !(s.exponent > 0))
            throw parse_error("piecewise_cdf: power segment needs positive exponent");

    auto seg_value = [knots, segments](std::size_t i, double x) {
        const auto [x0, F0] = knots[i];
        const auto [x1, F1] = knots[i + 1];
        const auto& s = segments[i];
        double w = (x - x0) / (x1 - x0);
        if (s.kind == Segment::Kind::linear) return F0 + (F1 - F0) * w;
        if (s.anchor_left) return F0 + (F1 - F0) * std::pow(w, s.exponent);
        return F1 - (F1 - F0) * std::pow(1.0 - w, s.exponent);
    };

    Distribution d;
    d.family = "piecewise";
    d.support_lo = knots.front().first;
    d.support_hi = knots.back().first;
    d.cdf = [knots, seg_value](double x) {
        if (x <= knots.front().first) return x == knots.front().first ? knots.front().second : 0.0;
        if (x >= knots.back().first) return 1.0;
        std::size_t i = 0;
        while (knots[i + 1].first < x) ++i;
        return seg_value(i, x);
    };
    d.quantile = [knots, segments, seg_value](double u) {
        // leftmost x with F(x) >= u
        std::size_t i = 0;
        while (knots[i + 1].second < u) ++i;
        const auto [x0, F0] = knots[i];
        const auto [x1, F1] = knots[i + 1];
        if (u <= F0) return x0;  // plateau starts at the left knot
        if (F1 == F0) return x1;
        const auto& s = segments[i];
        double w = (u - F0) / (F1 - F0);
        if (s.kind == Segment::Kind::power)
            w = s.anchor_left ? std::pow(w, 1.0 / s.exponent)
                              : 1.0 - std::pow(1.0 - w, 1.0 / s.exponent);
        return x0 + w * (x1 - x0);
    };
    return d;
}

Distribution piecewise_cdf(const std::vector<std::pair<double, double>>& knots) {
    return piecewise_cdf(knots, std::vector<Segment>(knots.size() - 1));
}

}  // namespace uproc
