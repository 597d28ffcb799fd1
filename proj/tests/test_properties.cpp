#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "truncon/measure.hpp"
#include "truncon/orbit.hpp"

using namespace truncon;

namespace {

constexpr int kTrials = 25;

Kernel random_kernel(oracle::Generator& gen, std::size_t n, std::size_t lead = 0) {
    auto k = gen.vector(n);
    for (std::size_t m = 0; m < std::min(lead, n); ++m) k[m] = 0.0;
    return Kernel(std::move(k), gen.real(-4.0, 4.0));
}

// atoms on multiples of 1/32 and one polynomial piece
Measure random_measure(oracle::Generator& gen) {
    Measure mu;
    const std::size_t atoms = gen.index(0, 3);
    for (std::size_t j = 0; j < atoms; ++j) mu = mu + Measure::dirac(gen.index(0, 31) / 32.0, gen.complex());
    const double lo = gen.index(0, 3) / 8.0;
    mu = mu + Measure::polynomial_density(Polynomial({gen.complex(), gen.complex(), gen.complex()}), lo, 1.0);
    return mu;
}

}  // namespace

TEST(Properties, ApplyIsLinear) {
    oracle::Generator gen(41);
    for (int t = 0; t < kTrials; ++t) {
        const std::size_t n = gen.grid(2, 12);
        const Kernel k = random_kernel(gen, n);
        const GridFunction f(gen.vector(n));
        const GridFunction g(gen.vector(n));
        const Complex a = gen.complex();
        const auto lhs = apply(k, f.scaled(a) + g);
        const auto rhs = apply(k, f).scaled(a) + apply(k, g);
        EXPECT_LE(norm(lhs - rhs, NormIndex::Inf), 1e-12 * norm(rhs, NormIndex::Inf)) << n;
    }
}

TEST(Properties, ComposeAgreesWithSuccessiveApplication) {
    oracle::Generator gen(42);
    for (int t = 0; t < kTrials; ++t) {
        const std::size_t n = gen.grid(2, 11);
        const Kernel a = random_kernel(gen, n);
        const Kernel b = random_kernel(gen, n);
        const GridFunction f(gen.vector(n));
        const auto lhs = apply(compose(a, b), f);
        const auto rhs = apply(a, apply(b, f));
        EXPECT_LE(norm(lhs - rhs, NormIndex::Inf), 1e-11 * norm(rhs, NormIndex::Inf)) << n;
    }
}

TEST(Properties, ComposeIsAssociative) {
    oracle::Generator gen(43);
    for (int t = 0; t < kTrials; ++t) {
        const std::size_t n = gen.grid(2, 10);
        const Kernel a = random_kernel(gen, n);
        const Kernel b = random_kernel(gen, n);
        const Kernel c = random_kernel(gen, n);
        EXPECT_LT(relative_distance(compose(compose(a, b), c), compose(a, compose(b, c))), 1e-12);
    }
}

TEST(Properties, LeadingIndicesAdd) {
    // Titchmarsh on the grid: first nonzero of a * b sits at the sum of the first nonzeros
    oracle::Generator gen(44);
    for (int t = 0; t < kTrials; ++t) {
        const std::size_t n = gen.grid(4, 12);
        const std::size_t la = gen.index(0, n / 2);
        const std::size_t lb = gen.index(0, n / 2);
        const Kernel c = compose(random_kernel(gen, n, la), random_kernel(gen, n, lb));
        if (la + lb < n) {
            EXPECT_EQ(c.leading_index(), la + lb);
        } else {
            EXPECT_TRUE(c.is_zero());
        }
    }
}

TEST(Properties, NormBoundedByTotalVariation) {
    oracle::Generator gen(45);
    for (int t = 0; t < kTrials; ++t) {
        const Measure mu = random_measure(gen);
        const std::size_t n = gen.grid(5, 11);
        EXPECT_LE(operator_norm_1(to_kernel(mu, n)), std::log(total_variation(mu)) + 1e-12);
    }
}

TEST(Properties, ToKernelIsAdditive) {
    oracle::Generator gen(46);
    for (int t = 0; t < kTrials; ++t) {
        const Measure mu = random_measure(gen);
        const Measure nu = random_measure(gen);
        const std::size_t n = gen.grid(5, 10);
        const auto lhs = oracle::kernel_entries(to_kernel(mu + nu, n));
        auto rhs = oracle::kernel_entries(to_kernel(mu, n));
        const auto b = oracle::kernel_entries(to_kernel(nu, n));
        for (std::size_t m = 0; m < n; ++m) rhs[m] += b[m];
        EXPECT_LE(oracle::max_abs_diff(lhs, rhs), 1e-13 * std::max(1.0, oracle::max_abs(rhs)));
    }
}

TEST(Properties, ConvolveMatchesComposeUpToCells) {
    // atoms on the grid compose exactly; densities to O(h)
    oracle::Generator gen(47);
    for (int t = 0; t < 10; ++t) {
        const Measure mu = random_measure(gen);
        const Measure nu = random_measure(gen);
        const std::size_t n = 512;
        const double d = relative_distance(to_kernel(convolve(mu, nu), n), compose(to_kernel(mu, n), to_kernel(nu, n)));
        EXPECT_LT(d, 40.0 / n);
    }
}

TEST(Properties, PowersAdd) {
    oracle::Generator gen(48);
    for (int t = 0; t < kTrials; ++t) {
        const std::size_t n = gen.grid(3, 9);
        const Kernel k = random_kernel(gen, n);
        const std::uint64_t a = gen.index(1, 40);
        const std::uint64_t b = gen.index(1, 40);
        EXPECT_LT(relative_distance(power(k, a + b), compose(power(k, a), power(k, b))), 1e-10);
    }
}

TEST(Properties, ExpOfSumIsProduct) {
    oracle::Generator gen(49);
    for (int t = 0; t < kTrials; ++t) {
        const std::size_t n = gen.grid(3, 8);
        const Kernel a = Kernel(gen.vector(n, 0.5));
        const Kernel b = Kernel(gen.vector(n, 0.5));
        EXPECT_LT(relative_distance(op_exp(a + b), compose(op_exp(a), op_exp(b))), 1e-11);
    }
}

TEST(Properties, OrbitIsSubmultiplicative) {
    oracle::Generator gen(50);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = gen.grid(4, 9);
        const Kernel k = random_kernel(gen, n);
        const GridFunction f(gen.vector(n));
        const auto trace = iterate_orbit(k, f, NormIndex::One, 20);
        const double step = operator_norm_1(k);
        for (std::size_t j = 1; j <= 20; ++j) {
            EXPECT_LE(trace.log_norms[j], trace.log_norms[j - 1] + step + 1e-10) << j;
        }
    }
}
