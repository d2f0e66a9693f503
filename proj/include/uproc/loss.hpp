#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace uproc {

enum class Smoothness {
    differentiable_everywhere,
    differentiable_off_zero,
    jump_at_zero,
    step,
};

// Piecewise-constant generating function: level levels[j] on [jumps[j-1], jumps[j]),
// levels[0] below the first jump, levels[J] from the last jump on.
struct StepSpec {
    std::vector<double> jumps;   // strictly increasing
    std::vector<double> levels;  // size jumps.size() + 1, non-decreasing
};

// Convex loss phi with its one-sided derivatives psi+ = D+phi, psi- = D-phi.
// phi(0) = 0 is enforced at construction.
struct ConvexLoss {
    std::string id;
    std::vector<double> params;
    std::function<double(double)> phi;
    std::function<double(double)> psi_plus;
    std::function<double(double)> psi_minus;
    Smoothness tag = Smoothness::differentiable_everywhere;
    std::optional<StepSpec> step;  // present exactly when tag == step or the
                                   // generating function is a pure step (check)

    bool coercive() const;  // psi eventually negative left and positive right
};

struct JumpDecomposition {
    double kappa_plus = 0.0;   // psi(0)
    double kappa_minus = 0.0;  // psi(0-)
    double kappa = 0.0;        // jump height kappa+ - kappa-
    std::function<double(double)> psi_c;        // continuous-at-zero part of psi+
    std::function<double(double)> psi_c_minus;  // same for psi-
};

// ids: square | check(alpha) | lp(p) | sigmoid_normal | sigmoid_cauchy |
//      three_step(alpha, beta, gamma, r)
ConvexLoss loss_catalog(const std::string& id, const std::vector<double>& params);

JumpDecomposition jump_decompose(const ConvexLoss& loss);

// Plug-in point for user losses; normalizes phi(0)=0 and keeps the invariants
// (psi- <= psi+, monotone psi) as the caller's contract.
ConvexLoss make_loss(std::string id, std::function<double(double)> phi,
                     std::function<double(double)> psi_plus,
                     std::function<double(double)> psi_minus, Smoothness tag,
                     std::optional<StepSpec> step = std::nullopt);

}  // namespace uproc
