#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace uproc {

// Symmetric degree-l map from l observation rows (each `dim` doubles) to a real.
struct Kernel {
    std::string id;
    int degree = 1;        // l
    int expected_dim = 1;  // 0 = any dimension
    std::vector<double> params;
    std::function<double(std::span<const double* const>, std::size_t dim)> eval;

    double operator()(std::span<const double* const> rows, std::size_t dim) const {
        return eval(rows, dim);
    }
};

// ids: identity (l=1) | walsh (mean of l entries, default l=2) |
//      mws(beta) (beta*min + (1-beta)*max, l=2) | abs_diff (l=2) |
//      theil_sen (l=2, dim=2 rows (y, z))
Kernel kernel_catalog(const std::string& id, const std::vector<double>& params, int degree = 0);

}  // namespace uproc
