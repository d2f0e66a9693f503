#include "uproc/loss.hpp"

#include <cmath>

#include "uproc/common.hpp"
#include "uproc/stats.hpp"

namespace uproc {

bool ConvexLoss::coercive() const {
    if (step) return step->levels.front() < 0.0 && step->levels.back() > 0.0;
    // catalog losses have sign(psi(t)) = sign(t) away from zero
    return psi_plus(-1e8) < 0.0 && psi_plus(1e8) > 0.0;
}

ConvexLoss make_loss(std::string id, std::function<double(double)> phi,
                     std::function<double(double)> psi_plus,
                     std::function<double(double)> psi_minus, Smoothness tag,
                     std::optional<StepSpec> step) {
    ConvexLoss l;
    l.id = std::move(id);
    double phi0 = phi(0.0);
    if (phi0 != 0.0)
        l.phi = [phi = std::move(phi), phi0](double t) { return phi(t) - phi0; };
    else
        l.phi = std::move(phi);
    l.psi_plus = std::move(psi_plus);
    l.psi_minus = std::move(psi_minus);
    l.tag = tag;
    l.step = std::move(step);
    return l;
}

namespace {

ConvexLoss step_loss(std::string id, StepSpec spec) {
    // phi(t) = integral of the step function from 0 to t
    auto phi = [spec](double t) {
        double lo = std::min(0.0, t), hi = std::max(0.0, t);
        double acc = 0.0;
        double cur = lo;
        for (std::size_t j = 0; j <= spec.jumps.size(); ++j) {
            double seg_hi = j < spec.jumps.size() ? std::min(hi, spec.jumps[j]) : hi;
            if (seg_hi > cur) {
                acc += spec.levels[j] * (seg_hi - cur);
                cur = seg_hi;
            }
            if (cur >= hi) break;
        }
        return t >= 0 ? acc : -acc;
    };
    auto psi_plus = [spec](double t) {
        std::size_t j = 0;
        while (j < spec.jumps.size() && spec.jumps[j] <= t) ++j;
        return spec.levels[j];
    };
    auto psi_minus = [spec](double t) {
        std::size_t j = 0;
        while (j < spec.jumps.size() && spec.jumps[j] < t) ++j;
        return spec.levels[j];
    };
    return make_loss(std::move(id), phi, psi_plus, psi_minus, Smoothness::step, std::move(spec));
}

}  // namespace

ConvexLoss loss_catalog(const std::string& id, const std::vector<double>& params) {
    if (id == "square") {
        auto l = make_loss(
            id, [](double t) { return t * t; }, [](double t) { return 2.0 * t; },
            [](double t) { return 2.0 * t; }, Smoothness::differentiable_everywhere);
        return l;
    }
    if (id == "check") {
        if (params.size() != 1 || !(params[0] > 0.0 && params[0] < 1.0))
            throw parse_error("check loss needs alpha in (0,1)");
        double alpha = params[0];
        StepSpec spec{{0.0}, {-alpha, 1.0 - alpha}};
        auto l = step_loss(id, std::move(spec));
        l.tag = Smoothness::jump_at_zero;
        l.params = params;
        return l;
    }
    if (id == "lp") {
        if (params.size() != 1)
            throw parse_error("lp loss needs exactly one parameter p");
        double p = params[0];
        if (!(p > 1.0))
            throw parse_error("lp loss needs p > 1 (for p = 1 use the check loss with alpha = 0.5)");
        auto psi = [p](double t) {
            return t == 0.0 ? 0.0 : p * (t > 0 ? 1.0 : -1.0) * std::pow(std::abs(t), p - 1.0);
        };
        auto l = make_loss(
            id, [p](double t) { return std::pow(std::abs(t), p); }, psi, psi,
            p >= 2.0 ? Smoothness::differentiable_everywhere : Smoothness::differentiable_off_zero);
        l.params = params;
        return l;
    }
    if (id == "sigmoid_normal") {
        // phi'(t) = Phi(t) - 1/2
        auto phi = [](double t) {
            return t * normal_cdf(t) + normal_pdf(t) - normal_pdf(0.0) - 0.5 * t;
        };
        auto psi = [](double t) { return normal_cdf(t) - 0.5; };
        return make_loss(id, phi, psi, psi, Smoothness::differentiable_everywhere);
    }
    if (id == "sigmoid_cauchy") {
        // phi'(t) = C(t) - 1/2 with C the standard Cauchy cdf
        constexpr double pi = 3.141592653589793238462643383279502884;
        auto phi = [pi](double t) {
            return (t * std::atan(t) - 0.5 * std::log1p(t * t)) / pi;
        };
        auto psi = [pi](double t) { return std::atan(t) / pi; };
        return make_loss(id, phi, psi, psi, Smoothness::differentiable_everywhere);
    }
    if (id == "three_step") {
        if (params.size() != 4)
            throw parse_error("three_step loss needs (alpha, beta, gamma, r)");
        double a = params[0], b = params[1], g = params[2], r = params[3];
        if (!(a < 0.0 && 0.0 < b && b < g && r > 0.0))
            throw parse_error("three_step loss needs alpha < 0 < beta < gamma and r > 0");
        auto l = step_loss(id, StepSpec{{0.0, r}, {a, b, g}});
        l.params = params;
        return l;
    }
    throw parse_error("unknown loss id: " + id);
}

JumpDecomposition jump_decompose(const ConvexLoss& loss) {
    JumpDecomposition d;
    d.kappa_plus = loss.psi_plus(0.0);
    d.kappa_minus = loss.psi_minus(0.0);
    d.kappa = d.kappa_plus - d.kappa_minus;
    double kp = d.kappa_plus, km = d.kappa_minus;
    d.psi_c = [psi = loss.psi_plus, kp, km](double t) {
        return psi(t) - (t >= 0 ? kp : km);
    };
    d.psi_c_minus = [psi = loss.psi_minus, kp, km](double t) {
        return psi(t) - (t > 0 ? kp : km);
    };
    return d;
}

}  // namespace uproc
