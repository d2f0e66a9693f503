#include "uproc/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "uproc/common.hpp"

namespace uproc {

Kernel kernel_catalog(const std::string& id, const std::vector<double>& params, int degree) {
    Kernel k;
    k.id = id;
    k.params = params;
    if (id == "identity") {
        k.degree = 1;
        k.eval = [](std::span<const double* const> rows, std::size_t) { return rows[0][0]; };
    } else if (id == "walsh") {
        k.degree = degree > 0 ? degree : 2;
        int l = k.degree;
        k.eval = [l](std::span<const double* const> rows, std::size_t) {
            double s = 0.0;
            for (int i = 0; i < l; ++i) s += rows[i][0];
            return s / double(l);
        };
    } else if (id == "mws") {
        if (params.size() != 1) throw parse_error("mws kernel needs parameter beta");
        double beta = params[0];
        if (!(beta > 0.0)) throw parse_error("mws kernel needs beta > 0");
        k.degree = 2;
        // beta x1 + (1-beta) x2 evaluated on the sorted pair, so the kernel is symmetric
        k.eval = [beta](std::span<const double* const> rows, std::size_t) {
            double a = rows[0][0], b = rows[1][0];
            if (a > b) std::swap(a, b);
            return beta * a + (1.0 - beta) * b;
        };
    } else if (id == "abs_diff") {
        k.degree = 2;
        k.eval = [](std::span<const double* const> rows, std::size_t) {
            return std::abs(rows[0][0] - rows[1][0]);
        };
    } else if (id == "theil_sen") {
        k.degree = 2;
        k.expected_dim = 2;
        k.eval = [](std::span<const double* const> rows, std::size_t dim) {
            if (dim != 2) throw analysis_error("theil_sen kernel needs 2-dimensional rows (y, z)");
            double dy = rows[0][0] - rows[1][0];
            if (dy == 0.0) throw analysis_error("theil_sen kernel: tie in y values");
            return (rows[0][1] - rows[1][1]) / dy;
        };
    } else {
        throw parse_error("unknown kernel id: " + id);
    }
    if (degree > 0 && degree != k.degree)
        throw parse_error("kernel " + id + " has fixed degree " + std::to_string(k.degree));
    return k;
}

}  // namespace uproc
