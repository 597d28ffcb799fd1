#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "truncon/measure.hpp"
#include "truncon/orbit.hpp"

using namespace truncon;

namespace {

const double kNegInf = -std::numeric_limits<double>::infinity();

GridFunction one(std::size_t n) { return make_grid_function(FunctionSpec::polynomial({1.0}), n); }

OrbitTrace synthetic(std::size_t n_max, auto&& fn) {
    OrbitTrace t;
    for (std::size_t n = 0; n <= n_max; ++n) t.log_norms.push_back(fn(static_cast<double>(n)));
    return t;
}

}  // namespace

TEST(IterateOrbit, IdentityIsFlat) {
    const auto trace = iterate_orbit(Kernel::identity(64), one(64), NormIndex::Two, 10);
    ASSERT_EQ(trace.steps(), 10u);
    for (double v : trace.log_norms) EXPECT_NEAR(v, 0.0, 1e-15);
}

TEST(IterateOrbit, NilpotentShiftDies) {
    const std::size_t n = 1024;
    const auto trace = iterate_orbit(to_kernel(Measure::dirac(0.40625), n), one(n), NormIndex::One, 5);
    EXPECT_TRUE(std::isfinite(trace.log_norms[2]));
    for (std::size_t k = 3; k <= 5; ++k) EXPECT_EQ(trace.log_norms[k], kNegInf) << k;
    EXPECT_EQ(norm(trace.state, NormIndex::Inf), 0.0);
}

TEST(IterateOrbit, IdentityPlusVolterraMatchesBinomialSum) {
    const std::size_t n = 256;
    const std::size_t steps = 200;
    const Kernel t = to_kernel(Measure::dirac(0.0) + Measure::lebesgue(), n);
    const auto trace = iterate_orbit(t, one(n), NormIndex::One, steps);
    for (std::size_t k : {1, 10, 50, 200}) {
        const double expected = static_cast<double>(oracle::discrete_identity_plus_volterra_log_l1(k, n, 1));
        EXPECT_NEAR(trace.log_norms[k], expected, 1e-11 * std::max(1.0, std::abs(expected))) << k;
    }
}

TEST(IterateOrbit, IdentityMinusVolterraMatchesBinomialSum) {
    const std::size_t n = 256;
    const Kernel t = to_kernel(Measure::dirac(0.0) + Measure::lebesgue().scaled(-1.0), n);
    const auto trace = iterate_orbit(t, one(n), NormIndex::One, 40);
    for (std::size_t k : {1, 5, 20, 40}) {
        const double expected = static_cast<double>(oracle::discrete_identity_plus_volterra_log_l1(k, n, -1));
        EXPECT_NEAR(trace.log_norms[k], expected, 1e-9) << k;
    }
}

TEST(IterateOrbit, ScaleInvariance) {
    oracle::Generator gen(21);
    const std::size_t n = 128;
    const Kernel t(gen.vector(n), 0.0);
    const GridFunction f(gen.vector(n));
    const auto a = iterate_orbit(t, f, NormIndex::Two, 30);
    const auto b = iterate_orbit(t, f.scaled(1e-100), NormIndex::Two, 30);
    for (std::size_t k = 0; k <= 30; ++k) {
        EXPECT_NEAR(a.log_norms[k] - a.log_norms[0], b.log_norms[k] - b.log_norms[0], 1e-10);
    }
}

TEST(IterateOrbit, Cancellation) {
    std::stop_source source;
    source.request_stop();
    EXPECT_THROW(iterate_orbit(volterra(64), one(64), NormIndex::One, 100, source.get_token()), Cancelled);
}

TEST(OperatorNormTrace, MatchesPowers) {
    const std::size_t n = 256;
    const Kernel t = to_kernel(Measure::dirac(0.0, 0.5) + Measure::polynomial_density(Polynomial({1.0, -2.0})), n);
    const auto trace = operator_norm_trace(t, 40);
    for (std::uint64_t k : {1, 7, 40}) {
        EXPECT_NEAR(trace.log_norms[k], operator_norm_1(power(t, k)), 1e-10) << k;
    }
    EXPECT_NEAR(trace.log_norms[0], 0.0, 1e-15);
}

TEST(GrowthPrediction, Predictions) {
    EXPECT_NEAR(theorem_a_prediction({1.0, 1.0, 0.0, 0.0}), 2.0, 1e-15);
    EXPECT_NEAR(theorem_a_prediction({1.0, 1.0, std::numbers::pi, 0.0}), 0.0, 1e-15);
    EXPECT_NEAR(theorem_a_prediction({2.0, 1.0, 0.0, 0.0}), 1.88988, 1e-5);
    EXPECT_NEAR(theorem_a_prediction({1.0, 1.0, 0.0, 0.5}), std::sqrt(2.0), 1e-15);
    // The operator-norm version ignores s.
    EXPECT_NEAR(theorem_a_norm_prediction({1.0, 1.0, 0.0, 0.5}), 2.0, 1e-15);
}

TEST(GrowthPrediction, ValidatesInput) {
    EXPECT_THROW((GrowthSpec{0.0, 1.0, 0.0, 0.0}.validate()), InputError);
    EXPECT_THROW((GrowthSpec{1.0, -1.0, 0.0, 0.0}.validate()), InputError);
    EXPECT_THROW((GrowthSpec{1.0, 1.0, 4.0, 0.0}.validate()), InputError);
    EXPECT_THROW((GrowthSpec{1.0, 1.0, 0.0, 1.0}.validate()), InputError);
    EXPECT_NO_THROW((GrowthSpec{1.0, 1.0, -std::numbers::pi, 0.0}.validate()));
}

TEST(GrowthExponent, SyntheticSquareRoot) {
    const auto trace = synthetic(4000, [](double n) { return 2.0 * std::sqrt(n); });
    const auto g = growth_exponent(trace, 1.0);
    EXPECT_NEAR(g.estimate, 2.0, 1e-12);
    EXPECT_NEAR(g.trend[4000], 2.0, 1e-12);
}

TEST(GrowthExponent, RemovesLowerOrderTerm) {
    // trend = 2 + 3/sqrt(n): the two-point extrapolation cancels most of the tail
    const auto trace = synthetic(4000, [](double n) { return 2.0 * std::sqrt(n) + 3.0; });
    const auto g = growth_exponent(trace, 1.0);
    EXPECT_LT(std::abs(g.estimate - 2.0), std::abs(g.trend[4000] - 2.0));
}

TEST(GrowthExponent, RejectsDeadOrbits) {
    auto trace = synthetic(200, [](double n) { return -n; });
    trace.log_norms.back() = kNegInf;
    EXPECT_THROW(growth_exponent(trace, 1.0), NumericalError);
    EXPECT_THROW(growth_exponent(synthetic(1, [](double) { return 0.0; }), 1.0), InputError);
}

TEST(DecayFloorFit, SubSquareRootPasses) {
    const auto fit = decay_floor_fit(synthetic(4000, [](double n) { return -2.0 * std::cbrt(n); }));
    EXPECT_NEAR(fit.beta, 1.0 / 3.0, 1e-9);
    EXPECT_NEAR(fit.c, 2.0, 1e-8);
    EXPECT_FALSE(fit.violates_floor);
}

TEST(DecayFloorFit, LinearDecayIsFlagged) {
    const auto fit = decay_floor_fit(synthetic(4000, [](double n) { return -0.01 * n; }));
    EXPECT_NEAR(fit.beta, 1.0, 1e-9);
    EXPECT_TRUE(fit.violates_floor);
}

TEST(DecayFloorFit, RefusesBadTraces) {
    EXPECT_THROW(decay_floor_fit(synthetic(4000, [](double n) { return 0.001 * n; })), NumericalError);
    auto dead = synthetic(4000, [](double n) { return -std::sqrt(n); });
    dead.log_norms[3000] = kNegInf;
    EXPECT_THROW(decay_floor_fit(dead), NumericalError);
    EXPECT_THROW(decay_floor_fit(synthetic(2, [](double n) { return -n; })), InputError);
}

TEST(IrregularRegimes, Rejections) {
    const auto f = one(64);
    const auto a = FunctionSpec::polynomial({1.0});
    EXPECT_THROW(irregular_regimes(FunctionSpec::power(0.5), a, f, 10), InputError);
    EXPECT_THROW(irregular_regimes(a, FunctionSpec::shifted(0.5, a), f, 10), InputError);
}

TEST(IrregularRegimes, ShortRunShapes) {
    const std::size_t n = 256;
    const auto f = apply(power(volterra(n), 3), one(n));
    const auto r = irregular_regimes(FunctionSpec::polynomial({1.0}), FunctionSpec::polynomial({-1.0}), f, 200);
    EXPECT_EQ(r.grow.p, NormIndex::One);
    EXPECT_EQ(r.shrink.p, NormIndex::Inf);
    EXPECT_GT(r.grow.log_norms[200], r.grow.log_norms[0] + 10.0);
    EXPECT_LT(r.shrink.log_norms[200], r.shrink.log_norms[0]);
}

TEST(IdentityPlusDensity, ConstantDensityIsIdentityPlusVolterra) {
    const Kernel r = identity_plus_density(FunctionSpec::polynomial({1.0}), 64);
    EXPECT_LT(relative_distance(r, Kernel::identity(64) + volterra(64)), 1e-15);
}
