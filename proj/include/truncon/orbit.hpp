#pragma once

#include <stop_token>
#include <vector>

#include "truncon/grid_space.hpp"
#include "truncon/kernel.hpp"

namespace truncon {

/**
 * Log-norms of an orbit n -> T^n f.
 *
 * log_norms[n] = ln ||T^n f||_p for n = 0..n_max, accumulated from per-step
 * growth factors so the value never overflows. A nilpotent orbit records
 * -inf from the first step whose iterate is exactly zero onward. `state` is
 * the last iterate scaled to unit p-norm (zero once the orbit dies).
 */
struct OrbitTrace {
    NormIndex p = NormIndex::One;
    std::vector<double> log_norms;
    GridFunction state = GridFunction::zeros(1);

    std::size_t steps() const { return log_norms.empty() ? 0 : log_norms.size() - 1; }
};

struct GrowthSpec {
    double r = 1.0;
    double b = 1.0;
    double alpha = 0.0;
    double s = 0.0;

    // Throws InputError unless r > 0, b > 0, alpha in [-pi, pi], s in [0,1).
    void validate() const;
};

struct GrowthEstimate {
    double estimate = 0.0;
    std::vector<double> trend;  // Lambda_n / max(n,1)^{1/(r+1)}
};

struct DecayFit {
    double beta = 0.0;
    double c = 0.0;
    // beta above the sub-sqrt(n) ceiling (with tolerance): decay too fast
    // for the log-summability floor.
    bool violates_floor = false;
};

// Tolerance-padded exponent ceiling for decay no faster than e^{-n^{1/2}}.
inline constexpr double kDecayExponentCeiling = 0.55;

OrbitTrace iterate_orbit(const Kernel& t, const GridFunction& f, NormIndex p, std::size_t n_max,
                         std::stop_token stop = {});

// n -> operator_norm_1(T^n) for n = 0..n_max, read off the orbit of the unit impulse.
OrbitTrace operator_norm_trace(const Kernel& t, std::size_t n_max, std::stop_token stop = {});

// Limit of ln||T^n f||_p / n^{1/(r+1)} for T = I + V^r (b e^{i alpha} I + W).
double theorem_a_prediction(const GrowthSpec& g);
// Limit of ln||T^n||_p / n^{1/(r+1)} (the operator-norm version, independent of s).
double theorem_a_norm_prediction(const GrowthSpec& g);

GrowthEstimate growth_exponent(const OrbitTrace& trace, double r);

// Least-squares fit of Lambda_0 - Lambda_n = C n^beta over the second half of the trace.
DecayFit decay_floor_fit(const OrbitTrace& trace);

struct IrregularRegimes {
    OrbitTrace grow;    // p = 1
    OrbitTrace shrink;  // p = inf
};

// R_a = I + C_{nu_a} for a polynomial density a.
Kernel identity_plus_density(const FunctionSpec& a, std::size_t n);

IrregularRegimes irregular_regimes(const FunctionSpec& a_plus, const FunctionSpec& a_minus,
                                   const GridFunction& f, std::size_t n_max,
                                   std::stop_token stop = {});

}  // namespace truncon
