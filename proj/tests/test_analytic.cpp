#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "truncon/analytic.hpp"
#include "truncon/measure.hpp"

using namespace truncon;

namespace {

constexpr double kPi = std::numbers::pi;

GridFunction sample(const Polynomial& p, std::size_t n) {
    return make_grid_function(FunctionSpec::polynomial(p.coeffs()), n);
}

}  // namespace

TEST(FourierLogAbs, DiracAtZeroIsOne) {
    for (Complex z : {Complex(0, 0), Complex(3, 0), Complex(0, 250), Complex(-7, -90)}) {
        EXPECT_NEAR(fourier_log_abs(Measure::dirac(0.0), z), 0.0, 1e-15);
    }
}

TEST(FourierLogAbs, ShiftedDiracIsExponential) {
    // |e^{-i t z}| = e^{t Im z}
    EXPECT_NEAR(fourier_log_abs(Measure::dirac(0.75, 2.0), Complex(1.0, 200.0)), std::log(2.0) + 150.0, 1e-12);
    EXPECT_EQ(fourier_log_abs(Measure(), Complex(0, 1)), -std::numeric_limits<double>::infinity());
}

TEST(FourierLogAbs, LebesgueMatchesGeometricSum) {
    const std::size_t n = 1024;
    const long double h = 1.0L / n;
    for (double r : {1.0, 20.0, 300.0}) {
        const long double rr = r;
        const long double up = h * std::expm1(rr) / std::expm1(h * rr);
        const long double down = h * -std::expm1(-rr) / -std::expm1(-h * rr);
        EXPECT_NEAR(fourier_log_abs(Measure::lebesgue(), Complex(0, r), n), static_cast<double>(std::log(up)), 1e-12);
        EXPECT_NEAR(fourier_log_abs(Measure::lebesgue(), Complex(0, -r), n), static_cast<double>(std::log(down)),
                    1e-12);
        // and the continuum (e^r - 1)/r up to the left-endpoint bias ln(hr / (e^{hr} - 1))
        const double hr = r / n;
        EXPECT_NEAR(fourier_log_abs(Measure::lebesgue(), Complex(0, r), n), std::log(std::expm1(r) / r),
                    0.5 * hr + hr * hr / 12.0);
    }
}

TEST(Indicator, LebesgueExamples) {
    EXPECT_NEAR(indicator_expected(Measure::lebesgue(), kPi / 2), 1.0, 1e-15);
    EXPECT_NEAR(indicator_expected(Measure::lebesgue(), -kPi / 2), 0.0, 1e-15);
    EXPECT_NEAR(indicator_estimate(Measure::lebesgue(), kPi / 2, 300.0, 1024), 1.0, 0.05);
    EXPECT_NEAR(indicator_estimate(Measure::lebesgue(), -kPi / 2, 300.0, 1024), 0.0, 0.05);
}

TEST(Indicator, TwoAtoms) {
    const Measure mu = Measure::dirac(0.5) + Measure::dirac(0.75);
    EXPECT_NEAR(indicator_expected(mu, kPi / 2), 0.75, 1e-15);
    EXPECT_NEAR(indicator_expected(mu, -kPi / 2), -0.5, 1e-15);
    EXPECT_NEAR(indicator_estimate(mu, kPi / 2, 300.0), 0.75, 0.01);
    EXPECT_NEAR(indicator_estimate(mu, -kPi / 2, 300.0), -0.5, 0.01);
}

TEST(Indicator, Rejections) {
    EXPECT_THROW(indicator_expected(Measure::lebesgue(), 0.0), InputError);
    EXPECT_THROW(indicator_expected(Measure::lebesgue(), 4.0), InputError);
    EXPECT_THROW(indicator_estimate(Measure::lebesgue(), kPi / 2, 10.0), InputError);
}

TEST(SampleRay, Invariants) {
    const auto ray = sample_ray(Measure::lebesgue(), kPi / 3, 10.0, 100.0, 16, 256);
    ASSERT_EQ(ray.radii.size(), 16u);
    EXPECT_DOUBLE_EQ(ray.radii.front(), 10.0);
    EXPECT_DOUBLE_EQ(ray.radii.back(), 100.0);
    for (std::size_t i = 1; i < ray.radii.size(); ++i) {
        EXPECT_GT(ray.radii[i], ray.radii[i - 1]);
        EXPECT_NEAR(ray.radii[i] / ray.radii[i - 1], std::pow(10.0, 1.0 / 15.0), 1e-12);
    }
    EXPECT_THROW(sample_ray(Measure::lebesgue(), 1.0, 10.0, 5.0), InputError);
    EXPECT_THROW(sample_ray(Measure::lebesgue(), 1.0, 1.0, 5.0, 1), InputError);
}

TEST(MlSupport, Examples) {
    const std::size_t n = 1024;
    // lambda' = -x dx starts at 0
    EXPECT_EQ(ml_support_check({Measure::lebesgue()}, {1.0}, n), 0.0);
    // delta_0 has a zero derivative measure, lambda does not
    EXPECT_EQ(ml_support_check({Measure::dirac(0.0), Measure::lebesgue()}, {1.0, 2.0}, n), 0.0);
    const Measure mixed = Measure::polynomial_density(Polynomial({0.0, 1.0})) + Measure::dirac(0.5);
    EXPECT_EQ(ml_support_check({mixed, Measure::lebesgue(), Measure::lebesgue()}, {1.0, 0.5, 3.0}, n), 0.0);
}

TEST(MlSupport, Rejections) {
    const std::size_t n = 64;
    EXPECT_THROW(ml_support_check({Measure::dirac(0.0)}, {1.0}, n), InputError);
    EXPECT_THROW(ml_support_check({Measure::dirac(0.25)}, {1.0}, n), InputError);
    EXPECT_THROW(ml_support_check({Measure::lebesgue()}, {-1.0}, n), InputError);
    EXPECT_THROW(ml_support_check({Measure::lebesgue()}, {1.0, 1.0}, n), InputError);
    EXPECT_THROW(ml_support_check({}, {}, n), InputError);
}

TEST(Trco, IdentityHoldsExactly) {
    // C f = B g with C, B the sampled densities g, f: both sides are the same
    // discrete convolution, so the residual is zero up to summation order.
    oracle::Generator gen(31);
    const std::size_t n = 512;
    const auto f = sample(Polynomial({1.0, gen.real(-1, 1), gen.real(-1, 1)}), n);
    const auto g = sample(Polynomial({gen.real(0.5, 1), 2.0}), n);
    const auto [c, b] = trco_pair(f, g);
    const auto lhs = apply(c, f);
    const auto rhs = apply(b, g);
    EXPECT_LE(norm(lhs - rhs, NormIndex::Inf), 1e-14 * norm(lhs, NormIndex::Inf));
}

TEST(Trco, LeadingEntriesAreSampledValues) {
    const std::size_t n = 64;
    const auto f = sample(Polynomial({2.0, 1.0}), n);
    const auto g = sample(Polynomial({3.0}), n);
    const auto [c, b] = trco_pair(f, g);
    EXPECT_NEAR(c.coefficient(0).real(), 3.0 / n, 1e-16);
    EXPECT_NEAR(b.coefficient(0).real(), f[0].real() / n, 1e-16);
}

TEST(Trco, RejectsLateSupport) {
    const std::size_t n = 64;
    const auto late = make_grid_function(FunctionSpec::shifted(0.5, FunctionSpec::polynomial({1.0})), n);
    EXPECT_THROW(trco_pair(late, sample(Polynomial({1.0}), n)), InputError);
    EXPECT_THROW(trco_pair(sample(Polynomial({1.0}), 64), sample(Polynomial({1.0}), 128)), InputError);
}

TEST(Brbrb, ResidualShrinksWithGrid) {
    double previous = 1.0;
    for (std::size_t n : {256, 512, 1024, 2048}) {
        const double r = brbrb_residual(sample(Polynomial({1.0, -0.5, 0.25}), n), Complex(0.5, 0.0));
        EXPECT_LT(r, previous) << n;
        previous = r;
    }
    EXPECT_LT(previous, 5e-3);
}

TEST(Brbrb, IntegerAndComplexOrders) {
    const auto f = sample(Polynomial({1.0, 1.0}), 2048);
    EXPECT_LT(brbrb_residual(f, 0.0), 5e-3);
    EXPECT_LT(brbrb_residual(f, Complex(0.3, 0.7)), 5e-3);
}

TEST(Brbrb, Rejections) {
    const auto f = sample(Polynomial({1.0}), 64);
    EXPECT_THROW(brbrb_residual(f, -1.0), InputError);
    EXPECT_THROW(brbrb_residual(make_grid_function(FunctionSpec::shifted(0.5, FunctionSpec::polynomial({1.0})), 64),
                                0.5),
                 InputError);
}
