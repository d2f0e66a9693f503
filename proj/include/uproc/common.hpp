#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace uproc {

// Error taxonomy. The CLI maps these onto stable exit codes, see cli.cpp.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct non_coercive_loss : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct analysis_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct estimator_failure : std::runtime_error {
    estimator_failure(const std::string& what, std::size_t rep, std::uint64_t sub_seed)
        : std::runtime_error(what + " [replication " + std::to_string(rep) +
                             ", sub_seed " + std::to_string(sub_seed) + "]"),
          replication(rep),
          sub_seed(sub_seed) {}
    std::size_t replication;
    std::uint64_t sub_seed;
};

namespace defaults {
// Tolerances and limits. Every report embeds these for provenance.
inline constexpr double quad_tol = 1e-10;       // absolute quadrature tolerance
inline constexpr double bisect_tol = 1e-12;     // absolute tolerance in t for bisections
inline constexpr std::size_t enumeration_cap = 2'000'000;
inline constexpr double grid_t0 = 1e-2;         // ratio-test grid start
inline constexpr double grid_ratio = 0.5;       // geometric grid factor
inline constexpr int grid_levels = 20;
inline constexpr double richardson_h0 = 1e-2;
inline constexpr int richardson_levels = 8;
inline constexpr double derivative_cap = 1e8;   // quotients beyond this count as +inf
inline constexpr double residual_clip = 1e12;   // residuals beyond this tally as +-inf
inline constexpr std::uint64_t master_seed = 1729;
inline constexpr std::size_t zeta_budget = 4'000'000;
}  // namespace defaults

// splitmix64 step; derives per-replication sub-seeds from (master, index) so
// that scheduling cannot affect the stream assignment.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace uproc
