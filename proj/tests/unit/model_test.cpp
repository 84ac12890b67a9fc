#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "ksrg/model.hpp"
#include "ksrg_oracles/oracles.hpp"

namespace ksrg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Kernel interpolation(double sigma) { return {KernelKind::Interpolation, sigma}; }

TEST(Kernel, FormulaInstances) {
    EXPECT_DOUBLE_EQ(kernel_eval(interpolation(1.0), 2.0, 3.0, 1), 6.0);
    EXPECT_DOUBLE_EQ(kernel_eval(interpolation(0.0), 2.0, 3.0, 1), 3.0);
    EXPECT_DOUBLE_EQ(kernel_eval({KernelKind::Sum, 0.0}, 1.0, 1.0, 2), 4.0);
}

TEST(Kernel, SymmetricAndSandwiched) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double a = std::pow(1.0 - u(rng), -2.0);
        const double b = std::pow(1.0 - u(rng), -2.0);
        for (int d : {1, 2, 3}) {
            const double s = kernel_eval({KernelKind::Sum, 0.0}, a, b, d);
            EXPECT_DOUBLE_EQ(s, kernel_eval({KernelKind::Sum, 0.0}, b, a, d));
            const double k0 = kernel_eval(interpolation(0.0), a, b, d);
            EXPECT_LE(k0, s * (1.0 + 1e-12));
            EXPECT_LE(s, std::pow(2.0, d) * k0 * (1.0 + 1e-12));
        }
        EXPECT_DOUBLE_EQ(kernel_eval(interpolation(0.7), a, b, 2), kernel_eval(interpolation(0.7), b, a, 2));
    }
}

ModelParams poly(int d, double alpha, double beta, double p) {
    ModelParams m;
    m.d = d;
    m.alpha = alpha;
    m.beta = beta;
    m.p = p;
    m.kernel = interpolation(1.0);
    return m;
}

TEST(ConnectionProb, PolynomialInstance) {
    const ModelParams m = poly(1, 2.0, 1.0, 0.8);
    const std::array<double, 1> x{0.0}, y{2.0};
    const auto r = connection_prob({0, x, 1.0}, {1, y, 1.0}, m);
    EXPECT_NEAR(r.value, 0.2, 1e-15);
    EXPECT_FALSE(r.degenerate);
}

TEST(ConnectionProb, ThresholdInstance) {
    ModelParams m = poly(1, 2.0, 3.0, 1.0);
    m.alpha = ExtReal::pos_inf();
    m.profile = ProfileKind::Threshold;
    const std::array<double, 1> x{0.0}, y{2.0};
    EXPECT_EQ(connection_prob({0, x, 1.0}, {1, y, 1.0}, m).value, 1.0);
}

TEST(ConnectionProb, CoincidentPositionsGiveCap) {
    const ModelParams m = poly(2, 2.0, 1.0, 0.7);
    const std::array<double, 2> x{1.0, 1.0};
    const auto r = connection_prob({0, x, 1.0}, {1, x, 3.0}, m);
    EXPECT_EQ(r.value, 0.7);
    EXPECT_TRUE(r.degenerate);
}

TEST(ConnectionProb, MonotoneBoundedAndSymmetric) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double alpha : {1.5, 2.0, 3.7, kInf}) {
        ModelParams m = poly(2, 2.0, 0.9, 0.6);
        m.alpha = ExtReal::from_double(alpha);
        m.profile = std::isinf(alpha) ? ProfileKind::Threshold : ProfileKind::Polynomial;
        for (int i = 0; i < 2000; ++i) {
            const std::array<double, 2> x{0.0, 0.0};
            const double r = 5.0 * u(rng);
            const std::array<double, 2> y{r, 0.0}, y_far{r + u(rng), 0.0};
            const double w1 = 1.0 + 4.0 * u(rng), w2 = 1.0 + 4.0 * u(rng), w3 = w2 + u(rng);
            const double base = connection_prob({0, x, w1}, {1, y, w2}, m).value;
            EXPECT_GE(base, 0.0);
            EXPECT_LE(base, m.p);
            EXPECT_EQ(base, connection_prob({1, y, w2}, {0, x, w1}, m).value);
            EXPECT_LE(connection_prob({0, x, w1}, {1, y_far, w2}, m).value, base);
            EXPECT_GE(connection_prob({0, x, w1}, {1, y, w3}, m).value, base);
        }
    }
}

TEST(ConnectionRule, AgreesWithOracleFormula) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int d : {1, 2, 3}) {
        for (KernelKind kind : {KernelKind::Interpolation, KernelKind::Sum}) {
            for (double sigma : {0.0, 0.5, 1.0, 2.0}) {
                for (double alpha : {1.5, 2.0, 2.3, kInf}) {
                    ModelParams m = poly(d, 2.0, 0.8, 0.9);
                    m.kernel = {kind, sigma};
                    m.alpha = ExtReal::from_double(alpha);
                    m.profile = std::isinf(alpha) ? ProfileKind::Threshold : ProfileKind::Polynomial;
                    const ConnectionRule rule(m);
                    for (int i = 0; i < 200; ++i) {
                        std::vector<double> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
                        for (auto& c : x) c = u(rng);
                        for (auto& c : y) c = u(rng);
                        const double wx = 1.0 + std::abs(u(rng)), wy = 1.0 + std::abs(u(rng));
                        const double got = rule.pair_prob(wx, x, wy, y);
                        const double want = oracles::pair_probability(m, x, wx, y, wy);
                        EXPECT_NEAR(got, want, 1e-12 * std::max(1.0, want));
                        EXPECT_EQ(got, connection_prob({0, x, wx}, {1, y, wy}, m).value);
                    }
                }
            }
        }
    }
}

}  // namespace
}  // namespace ksrg
