#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "uproc/estimator.hpp"

using namespace uproc;

namespace {

KernelSample from_values(std::vector<double> v) {
    KernelSample ks;
    ks.n = v.size();
    ks.l = 1;
    std::sort(v.begin(), v.end());
    ks.values = std::move(v);
    return ks;
}

// independent empirical-quantile oracle: [x_(ceil(aN)), x_(floor(aN)+1)]
std::pair<double, double> quantile_interval_oracle(const std::vector<double>& sorted, double alpha) {
    double aN = alpha * double(sorted.size());
    std::size_t lo = (std::size_t)std::ceil(aN);
    std::size_t hi = (std::size_t)std::floor(aN) + 1;
    hi = std::min(hi, sorted.size());
    return {sorted[lo - 1], sorted[hi - 1]};
}

std::vector<ConvexLoss> scan_losses() {
    return {loss_catalog("square", {}), loss_catalog("check", {0.25}),
            loss_catalog("lp", {1.5}), loss_catalog("sigmoid_normal", {}),
            loss_catalog("three_step", {-0.5, 0.3, 1.0, 0.7})};
}

}  // namespace

TEST_CASE("kernel_sample: enumerated examples") {
    auto walsh = kernel_catalog("walsh", {});
    auto ks = kernel_sample(Dataset::from_scalars({0, 2, 4}), walsh);
    CHECK(ks.values == std::vector<double>{1, 2, 3});
    CHECK(ks.size() == 3);

    auto id = kernel_catalog("identity", {});
    auto ks1 = kernel_sample(Dataset::from_scalars({3, 1, 2}), id);
    CHECK(ks1.values == std::vector<double>{1, 2, 3});

    auto ad = kernel_catalog("abs_diff", {});
    auto ks2 = kernel_sample(Dataset::from_scalars({0, 1, 3}), ad);
    CHECK(ks2.values == std::vector<double>{1, 2, 3});
}

TEST_CASE("kernel_sample: size C(n,l) for degree 3 and cap behavior") {
    auto w3 = kernel_catalog("walsh", {}, 3);
    auto ks = kernel_sample(Dataset::from_scalars({1, 2, 3, 4, 5, 6}), w3);
    CHECK(ks.size() == 20);  // C(6,3)
    CHECK(std::is_sorted(ks.values.begin(), ks.values.end()));

    std::vector<double> big(3000);
    std::iota(big.begin(), big.end(), 0.0);
    auto pairk = kernel_catalog("walsh", {});
    CHECK_THROWS_AS(kernel_sample(Dataset::from_scalars(big), pairk, 2'000'000), cap_exceeded);
    CHECK_THROWS_AS(kernel_sample(Dataset::from_scalars({1.0}), pairk), parse_error);  // n < l
}

TEST_CASE("v_plus / v_minus: frozen examples") {
    auto ks = from_values({1, 2, 3});
    auto check = loss_catalog("check", {0.5});
    CHECK(v_plus(ks, check, 2.0) == doctest::Approx(2.0 / 3.0 - 0.5));
    CHECK(v_minus(ks, check, 2.0) == doctest::Approx(1.0 / 3.0 - 0.5));

    auto square = loss_catalog("square", {});
    CHECK(v_plus(ks, square, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("u_value: frozen examples and convexity") {
    auto square = loss_catalog("square", {});
    auto ks = from_values({1, 3});
    CHECK(u_value(ks, square, 2.0, 0.0) == doctest::Approx(-4.0));
    CHECK(u_value(ks, square, 5.0, 5.0) == doctest::Approx(0.0));

    auto check = loss_catalog("check", {0.5});
    CHECK(u_value(from_values({0}), check, 1.0, 0.0) == doctest::Approx(0.5));

    // midpoint convexity on a grid
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-4.0, 8.0);
    for (const auto& loss : scan_losses()) {
        for (int i = 0; i < 200; ++i) {
            double a = U(rng), b = U(rng);
            double mid = u_value(ks, loss, 0.5 * (a + b), 0.0);
            double avg = 0.5 * (u_value(ks, loss, a, 0.0) + u_value(ks, loss, b, 0.0));
            CHECK(mid <= avg + 1e-10);
        }
    }
}

TEST_CASE("argmin_interval: frozen examples") {
    auto check = loss_catalog("check", {0.5});
    auto mi = argmin_interval(from_values({1, 2, 3}), check);
    CHECK(mi.smallest == doctest::Approx(2.0));
    CHECK(mi.largest == doctest::Approx(2.0));

    auto mi4 = argmin_interval(from_values({1, 2, 3, 4}), check);
    CHECK(mi4.smallest == 2.0);
    CHECK(mi4.largest == 3.0);
    CHECK(mi4.selected == doctest::Approx(2.5));  // midpoint policy

    auto square = loss_catalog("square", {});
    auto mis = argmin_interval(from_values({1, 2, 3}), square);
    CHECK(mis.smallest == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(mis.largest == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("argmin_interval satisfies the minimizer inequalities") {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> N(0.0, 2.0);
    for (const auto& loss : scan_losses()) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> xs(20);
            for (auto& x : xs) x = N(rng);
            auto ks = from_values(xs);
            auto mi = argmin_interval(ks, loss);
            double slack = loss.step ? 0.0 : 1e-9;
            for (double t : {mi.smallest, mi.largest, mi.selected}) {
                CHECK(v_minus(ks, loss, t) <= slack);
                CHECK(v_plus(ks, loss, t) >= -slack);
            }
            CHECK(mi.smallest <= mi.selected);
            CHECK(mi.selected <= mi.largest);
        }
    }
}

TEST_CASE("check-loss argmin equals the empirical quantile interval (rank oracle)") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-10.0, 10.0);
    std::uniform_real_distribution<double> A(0.05, 0.95);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 1 + rng() % 200;
        std::vector<double> xs(n);
        for (auto& x : xs) x = U(rng);
        double alpha = A(rng);
        auto ks = from_values(xs);
        auto mi = argmin_interval(ks, loss_catalog("check", {alpha}));
        auto [qlo, qhi] = quantile_interval_oracle(ks.values, alpha);
        CHECK(mi.smallest == qlo);  // exact equality, both are data points
        CHECK(mi.largest == qhi);
    }
}

TEST_CASE("check loss: v_plus is the rank function minus alpha") {
    auto ks = from_values({-1, 0, 2, 2, 5});
    double alpha = 0.37;
    auto loss = loss_catalog("check", {alpha});
    for (double t : {-2.0, -1.0, 0.5, 2.0, 4.9, 5.0, 6.0}) {
        double rank = double(std::upper_bound(ks.values.begin(), ks.values.end(), t) -
                             ks.values.begin());
        CHECK(v_plus(ks, loss, t) == doctest::Approx(rank / 5.0 - alpha).epsilon(1e-12));
    }
}

TEST_CASE("square loss argmin equals the kernel-sample mean") {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> N(3.0, 5.0);
    auto square = loss_catalog("square", {});
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> xs(35);
        for (auto& x : xs) x = N(rng);
        auto ks = from_values(xs);
        double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / double(xs.size());
        auto mi = argmin_interval(ks, square);
        CHECK(std::abs(mi.selected - mean) < 1e-10);
    }
}

TEST_CASE("translation equivariance of smallest/largest") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> N(0.0, 1.0);
    const double c = 17.25;
    for (const auto& loss : scan_losses()) {
        std::vector<double> xs(25);
        for (auto& x : xs) x = N(rng);
        auto mi = argmin_interval(from_values(xs), loss);
        std::vector<double> shifted = xs;
        for (auto& x : shifted) x += c;
        auto mi2 = argmin_interval(from_values(shifted), loss);
        // step losses land exactly on (shifted) data points; bisection roots
        // move by c up to tolerance
        double tol = loss.step ? 1e-12 : 1e-8;
        CHECK(std::abs(mi2.smallest - (mi.smallest + c)) < tol);
        CHECK(std::abs(mi2.largest - (mi.largest + c)) < tol);
    }
}

TEST_CASE("grid-scan oracle: no point improves on the argmin value (l up to 3)") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> N(0.0, 1.5);
    auto kernels = std::vector<Kernel>{kernel_catalog("identity", {}), kernel_catalog("walsh", {}),
                                       kernel_catalog("walsh", {}, 3)};
    for (const auto& loss : scan_losses()) {
        for (const auto& kern : kernels) {
            std::vector<double> xs(8);
            for (auto& x : xs) x = N(rng);
            auto ks = kernel_sample(Dataset::from_scalars(xs), kern);
            auto mi = argmin_interval(ks, loss);
            double at_min = u_value(ks, loss, mi.selected, 0.0);
            double lo = ks.values.front() - 1.0, hi = ks.values.back() + 1.0;
            for (int g = 0; g <= 4000; ++g) {
                double t = lo + (hi - lo) * double(g) / 4000.0;
                CHECK(u_value(ks, loss, t, 0.0) >= at_min - 1e-9);
            }
        }
    }
}

TEST_CASE("kernel_sample with two-dimensional rows (theil_sen)") {
    auto th = kernel_catalog("theil_sen", {});
    auto ks = kernel_sample(Dataset::from_rows({{0, 0}, {2, 4}, {1, 1}}), th);
    CHECK(ks.values == std::vector<double>{1, 2, 3});  // pairwise slopes
    CHECK_THROWS_AS(kernel_sample(Dataset::from_scalars({1, 2, 3}), th), parse_error);
}

TEST_CASE("V_n^- <= V_n^+ and both non-decreasing (random triples)") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> N(0.0, 3.0);
    std::uniform_real_distribution<double> T(-6.0, 6.0);
    auto losses = scan_losses();
    for (int trial = 0; trial < 1000; ++trial) {
        const auto& loss = losses[trial % losses.size()];
        std::vector<double> xs(5 + trial % 20);
        for (auto& x : xs) x = N(rng);
        auto ks = from_values(xs);
        double t1 = T(rng), t2 = T(rng);
        if (t1 > t2) std::swap(t1, t2);
        CHECK(v_minus(ks, loss, t1) <= v_plus(ks, loss, t1) + 1e-12);
        CHECK(v_plus(ks, loss, t1) <= v_plus(ks, loss, t2) + 1e-12);
        CHECK(v_minus(ks, loss, t1) <= v_minus(ks, loss, t2) + 1e-12);
    }
}

TEST_CASE("non-coercive step loss is rejected") {
    // generating function that never becomes positive
    StepSpec spec{{0.0}, {-1.0, -0.2}};
    auto bad = make_loss("decreasing_step",
                         [](double t) { return t >= 0 ? -0.2 * t : -1.0 * t; },
                         [spec](double t) { return t >= 0 ? spec.levels[1] : spec.levels[0]; },
                         [spec](double t) { return t > 0 ? spec.levels[1] : spec.levels[0]; },
                         Smoothness::step, spec);
    CHECK_THROWS_AS(argmin_interval(from_values({1, 2, 3}), bad), non_coercive_loss);
}

TEST_CASE("policy selection") {
    auto check = loss_catalog("check", {0.5});
    auto ks = from_values({1, 2, 3, 4});
    CHECK(argmin_interval(ks, check, Policy::smallest).selected == 2.0);
    CHECK(argmin_interval(ks, check, Policy::largest).selected == 3.0);
    CHECK(argmin_interval(ks, check, Policy::midpoint).selected == 2.5);
}
