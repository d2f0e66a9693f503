#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "uproc/common.hpp"
#include "uproc/kernel.hpp"
#include "uproc/loss.hpp"

namespace uproc {

// Row-major observation matrix, n rows of dim columns.
struct Dataset {
    std::size_t n = 0;
    std::size_t dim = 1;
    std::vector<double> values;

    const double* row(std::size_t i) const { return values.data() + i * dim; }
    static Dataset from_rows(const std::vector<std::vector<double>>& rows);
    static Dataset from_scalars(std::vector<double> xs);
};

// Sorted multiset {k(X_i1,...,X_il) : i1 < ... < il}, size C(n, l).
struct KernelSample {
    std::vector<double> values;  // ascending
    std::size_t n = 0;
    std::size_t l = 1;
    std::size_t size() const { return values.size(); }
};

std::size_t binomial_or_throw(std::size_t n, std::size_t l, std::size_t cap);

KernelSample kernel_sample(const Dataset& data, const Kernel& kernel,
                           std::size_t cap = defaults::enumeration_cap);

double v_plus(const KernelSample& ks, const ConvexLoss& loss, double t);
double v_minus(const KernelSample& ks, const ConvexLoss& loss, double t);
double u_value(const KernelSample& ks, const ConvexLoss& loss, double t, double t0);

enum class Policy { smallest, largest, midpoint };

Policy policy_from_string(const std::string& s);
std::string to_string(Policy p);

struct MinimizerInterval {
    double smallest = 0.0;
    double largest = 0.0;
    double selected = 0.0;
    Policy policy = Policy::midpoint;
    std::size_t n = 0, l = 0, N = 0;
};

// Argmin(U_n) = {t : V_n^-(t) <= 0 <= V_n^+(t)}. Step generating functions are
// located exactly from the sorted kernel values; continuous ones by bisection.
MinimizerInterval argmin_interval(const KernelSample& ks, const ConvexLoss& loss,
                                  Policy policy = Policy::midpoint);

}  // namespace uproc
