#pragma once

#include <functional>
#include <vector>

namespace uproc {

double normal_pdf(double x, double mu = 0.0, double sigma = 1.0);
double normal_cdf(double x, double mu = 0.0, double sigma = 1.0);
double normal_quantile(double u, double mu = 0.0, double sigma = 1.0);
double cauchy_pdf(double x, double loc = 0.0, double scale = 1.0);
double cauchy_cdf(double x, double loc = 0.0, double scale = 1.0);
double cauchy_quantile(double u, double loc = 0.0, double scale = 1.0);

// Adaptive Gauss-Kronrod integral of f over (0,1) to absolute tolerance.
// Throws analysis_error when the error estimate does not reach tol.
double integrate01(const std::function<double(double)>& f, double abs_tol);

// Same over an arbitrary finite interval [a,b].
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
    double rms_residual = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Leftmost generalized inverse of a non-decreasing predicate: smallest t in
// [lo, hi] with pred(t) true. Requires pred(lo) false, pred(hi) true; returns
// a point where pred holds, within abs_tol of the infimum.
double bisect_leftmost(const std::function<bool(double)>& pred, double lo, double hi,
                       double abs_tol);

// Rightmost point with pred(t) true, for pred non-increasing in t.
double bisect_rightmost(const std::function<bool(double)>& pred, double lo, double hi,
                        double abs_tol);

}  // namespace uproc
