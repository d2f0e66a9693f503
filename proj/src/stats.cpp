#include "uproc/stats.hpp"

#include <boost/math/distributions/cauchy.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numeric>

#include "uproc/common.hpp"

namespace uproc {

double normal_pdf(double x, double mu, double sigma) {
    return boost::math::pdf(boost::math::normal_distribution<>(mu, sigma), x);
}

double normal_cdf(double x, double mu, double sigma) {
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return boost::math::cdf(boost::math::normal_distribution<>(mu, sigma), x);
}

double normal_quantile(double u, double mu, double sigma) {
    return boost::math::quantile(boost::math::normal_distribution<>(mu, sigma), u);
}

double cauchy_pdf(double x, double loc, double scale) {
    return boost::math::pdf(boost::math::cauchy_distribution<>(loc, scale), x);
}

double cauchy_cdf(double x, double loc, double scale) {
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return boost::math::cdf(boost::math::cauchy_distribution<>(loc, scale), x);
}

double cauchy_quantile(double u, double loc, double scale) {
    return boost::math::quantile(boost::math::cauchy_distribution<>(loc, scale), u);
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
    // quantile-transformed integrands concentrate their irregularity at the
    // interval endpoints, which double-exponential quadrature handles
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    double err = 0.0, l1 = 0.0;
    double val;
    try {
        val = integrator.integrate(f, a, b, 1e-11, &err, &l1, nullptr);
    } catch (const std::exception& e) {
        throw analysis_error(std::string("quadrature failed (integrability (A0) suspect): ") +
                             e.what());
    }
    if (!std::isfinite(val) ||
        !(err <= std::max(abs_tol, 10.0 * abs_tol * std::max(1.0, l1)))) {
        throw analysis_error(
            "quadrature did not converge (integrability (A0) suspect), error estimate " +
            std::to_string(err));
    }
    return val;
}

double integrate01(const std::function<double(double)>& f, double abs_tol) {
    return integrate(f, 0.0, 1.0, abs_tol);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    LinearFit out;
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) return out;
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    out.slope = sxx > 0 ? sxy / sxx : 0.0;
    out.intercept = my - out.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (out.intercept + out.slope * x[i]);
        ss_res += r * r;
    }
    out.rms_residual = std::sqrt(ss_res / double(n));
    out.r2 = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    return out;
}

double bisect_leftmost(const std::function<bool(double)>& pred, double lo, double hi,
                       double abs_tol) {
    // invariant: pred(hi) true, pred(lo) false
    while (hi - lo > abs_tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // ran out of float resolution
        if (pred(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double bisect_rightmost(const std::function<bool(double)>& pred, double lo, double hi,
                        double abs_tol) {
    // invariant: pred(lo) true, pred(hi) false
    while (hi - lo > abs_tol) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace uproc
