#include "uproc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uproc {

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
    Dataset d;
    if (rows.empty()) return d;
    d.n = rows.size();
    d.dim = rows[0].size();
    d.values.reserve(d.n * d.dim);
    for (const auto& r : rows) {
        if (r.size() != d.dim) throw parse_error("ragged data rows");
        d.values.insert(d.values.end(), r.begin(), r.end());
    }
    return d;
}

Dataset Dataset::from_scalars(std::vector<double> xs) {
    Dataset d;
    d.n = xs.size();
    d.dim = 1;
    d.values = std::move(xs);
    return d;
}

std::size_t binomial_or_throw(std::size_t n, std::size_t l, std::size_t cap) {
    if (l == 0 || l > n) throw parse_error("kernel degree must satisfy 1 <= l <= n");
    long double acc = 1.0L;
    for (std::size_t i = 0; i < l; ++i) acc = acc * double(n - i) / double(i + 1);
    if (acc > (long double)cap)
        throw cap_exceeded("C(n,l) = " + std::to_string((double)acc) + " exceeds the enumeration cap " +
                           std::to_string(cap) + "; raise the cap or subsample the data");
    return (std::size_t)std::llround((double)acc);
}

KernelSample kernel_sample(const Dataset& data, const Kernel& kernel, std::size_t cap) {
    const std::size_t n = data.n;
    const std::size_t l = (std::size_t)kernel.degree;
    if (kernel.expected_dim > 0 && data.dim != (std::size_t)kernel.expected_dim)
        throw parse_error("kernel " + kernel.id + " expects dimension " +
                          std::to_string(kernel.expected_dim) + ", data has " +
                          std::to_string(data.dim));
    const std::size_t N = binomial_or_throw(n, l, cap);

    KernelSample ks;
    ks.n = n;
    ks.l = l;
    ks.values.reserve(N);

    std::vector<std::size_t> idx(l);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<const double*> rows(l);
    while (true) {
        for (std::size_t j = 0; j < l; ++j) rows[j] = data.row(idx[j]);
        ks.values.push_back(kernel.eval(std::span<const double* const>(rows.data(), l), data.dim));
        // next strictly increasing index combination
        std::size_t j = l;
        while (j > 0) {
            --j;
            if (idx[j] != j + n - l) {
                ++idx[j];
                for (std::size_t k = j + 1; k < l; ++k) idx[k] = idx[k - 1] + 1;
                break;
            }
            if (j == 0) {
                std::sort(ks.values.begin(), ks.values.end());
                return ks;
            }
        }
    }
}

namespace {

// V_n^+/- at t for a step generating function, via rank counts:
// N V = N L_0 + sum_j (L_{j+1} - L_j) #{k_i + s_j <= t}.
// The comparison is on k_i + s_j (never t - s_j), so the jump locations of the
// evaluated function are bit-identical to the candidate points k_i + s_j that
// step_argmin enumerates.
double step_v_plus(const std::vector<double>& sorted, const StepSpec& s, double t) {
    const double N = double(sorted.size());
    double acc = N * s.levels.front();
    for (std::size_t j = 0; j < s.jumps.size(); ++j) {
        double sj = s.jumps[j];
        auto it = std::partition_point(sorted.begin(), sorted.end(),
                                       [&](double k) { return k + sj <= t; });
        acc += (s.levels[j + 1] - s.levels[j]) * double(it - sorted.begin());
    }
    return acc / N;
}

double step_v_minus(const std::vector<double>& sorted, const StepSpec& s, double t) {
    const double N = double(sorted.size());
    double acc = N * s.levels.front();
    for (std::size_t j = 0; j < s.jumps.size(); ++j) {
        double sj = s.jumps[j];
        auto it = std::partition_point(sorted.begin(), sorted.end(),
                                       [&](double k) { return k + sj < t; });
        acc += (s.levels[j + 1] - s.levels[j]) * double(it - sorted.begin());
    }
    return acc / N;
}

}  // namespace

double v_plus(const KernelSample& ks, const ConvexLoss& loss, double t) {
    if (loss.step) return step_v_plus(ks.values, *loss.step, t);
    double acc = 0.0;
    for (double v : ks.values) acc += loss.psi_plus(t - v);
    return acc / double(ks.size());
}

double v_minus(const KernelSample& ks, const ConvexLoss& loss, double t) {
    if (loss.step) return step_v_minus(ks.values, *loss.step, t);
    double acc = 0.0;
    for (double v : ks.values) acc += loss.psi_minus(t - v);
    return acc / double(ks.size());
}

double u_value(const KernelSample& ks, const ConvexLoss& loss, double t, double t0) {
    double acc = 0.0;
    for (double v : ks.values) acc += loss.phi(t - v) - loss.phi(t0 - v);
    return acc / double(ks.size());
}

namespace {

MinimizerInterval step_argmin(const KernelSample& ks, const StepSpec& spec) {
    // jump locations of V_n^+/-: every k_i + s_j, evaluated exactly
    std::vector<double> cand;
    cand.reserve(ks.size() * spec.jumps.size());
    for (double s : spec.jumps)
        for (double v : ks.values) cand.push_back(v + s);
    std::sort(cand.begin(), cand.end());

    // smallest: first candidate with V^+ >= 0 (V^+ is rcll, non-decreasing)
    std::size_t lo = 0, hi = cand.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (step_v_plus(ks.values, spec, cand[mid]) >= 0.0)
            hi = mid;
        else
            lo = mid + 1;
    }
    MinimizerInterval out;
    out.smallest = cand[lo];

    // largest: last candidate with V^- <= 0 (V^- is left-continuous, non-decreasing)
    lo = 0;
    hi = cand.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi + 1) / 2;
        if (step_v_minus(ks.values, spec, cand[mid]) <= 0.0)
            lo = mid;
        else
            hi = mid - 1;
    }
    out.largest = cand[lo];
    return out;
}

MinimizerInterval continuous_argmin(const KernelSample& ks, const ConvexLoss& loss) {
    double lo0 = ks.values.front() - 1.0;
    double hi0 = ks.values.back() + 1.0;
    double w = std::max(1.0, hi0 - lo0);
    int grow = 0;
    while (v_plus(ks, loss, hi0) < 0.0) {
        hi0 += w;
        w *= 2;
        if (++grow > 60) throw non_coercive_loss("V_n^+ never reaches 0 from above");
    }
    w = std::max(1.0, hi0 - lo0);
    grow = 0;
    while (v_minus(ks, loss, lo0) > 0.0) {
        lo0 -= w;
        w *= 2;
        if (++grow > 60) throw non_coercive_loss("V_n^- never reaches 0 from below");
    }

    MinimizerInterval out;
    // smallest = inf{t : V^+(t) >= 0}; keep the endpoint where the inequality holds
    {
        double lo = lo0, hi = hi0;
        if (v_plus(ks, loss, lo) >= 0.0) {
            out.smallest = lo;
        } else {
            while (hi - lo > defaults::bisect_tol) {
                double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                if (v_plus(ks, loss, mid) >= 0.0)
                    hi = mid;
                else
                    lo = mid;
            }
            out.smallest = hi;
        }
    }
    // largest = sup{t : V^-(t) <= 0}
    {
        double lo = lo0, hi = hi0;
        if (v_minus(ks, loss, hi) <= 0.0) {
            out.largest = hi;
        } else {
            while (hi - lo > defaults::bisect_tol) {
                double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                if (v_minus(ks, loss, mid) <= 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            out.largest = lo;
        }
    }
    if (out.largest < out.smallest) out.largest = out.smallest;  // bisection tolerance overlap
    return out;
}

}  // namespace

Policy policy_from_string(const std::string& s) {
    if (s == "smallest") return Policy::smallest;
    if (s == "largest") return Policy::largest;
    if (s == "midpoint") return Policy::midpoint;
    throw parse_error("unknown policy: " + s);
}

std::string to_string(Policy p) {
    switch (p) {
        case Policy::smallest: return "smallest";
        case Policy::largest: return "largest";
        default: return "midpoint";
    }
}

MinimizerInterval argmin_interval(const KernelSample& ks, const ConvexLoss& loss, Policy policy) {
    if (ks.values.empty()) throw analysis_error("empty kernel sample");
    if (!loss.coercive())
        throw non_coercive_loss("loss " + loss.id + " is not coercive; Argmin(U_n) is unbounded");

    MinimizerInterval out = loss.step ? step_argmin(ks, *loss.step) : continuous_argmin(ks, loss);
    out.policy = policy;
    out.n = ks.n;
    out.l = ks.l;
    out.N = ks.size();
    switch (policy) {
        case Policy::smallest: out.selected = out.smallest; break;
        case Policy::largest: out.selected = out.largest; break;
        case Policy::midpoint: out.selected = 0.5 * (out.smallest + out.largest); break;
    }
    return out;
}

}  // namespace uproc
