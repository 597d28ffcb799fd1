#pragma once

#include <vector>

#include "truncon/grid_space.hpp"
#include "truncon/kernel.hpp"
#include "truncon/measure.hpp"

namespace truncon {

inline constexpr std::size_t kDefaultFourierGrid = 4096;
inline constexpr std::size_t kIndicatorRadii = 64;

struct RaySample {
    double theta = 0.0;
    std::vector<double> radii;
    std::vector<double> log_abs;
};

/**
 * ln |mu^(z)| with mu^(z) = integral of e^{-itz} dmu(t).
 *
 * Atoms enter exactly; density pieces are replaced by their compiled kernel
 * cells on an n-point grid, the cell at m h contributing k_m e^{-i m h z}.
 * Terms are accumulated relative to the largest modulus, so |Im z| in the
 * hundreds stays representable. Returns -inf for the zero measure.
 */
double fourier_log_abs(const Measure& mu, Complex z, std::size_t n = kDefaultFourierGrid);

RaySample sample_ray(const Measure& mu, double theta, double r_lo, double r_hi,
                     std::size_t count = kIndicatorRadii, std::size_t n = kDefaultFourierGrid);

// max over 64 log-spaced radii in [R/2, R] of ln|mu^(r e^{i theta})| / r.
double indicator_estimate(const Measure& mu, double theta, double big_r,
                          std::size_t n = kDefaultFourierGrid);

// b sin(theta) on [0, pi], a sin(theta) on (-pi, 0), a/b = inf/sup of the support.
double indicator_expected(const Measure& mu, double theta);

// inf supp of sum_j c_j (mu_1 * ... * mu_j' * ... * mu_k), built at kernel level;
// the support is the first cell that is exactly nonzero.
double ml_support_check(const std::vector<Measure>& mus, const std::vector<double>& cs, std::size_t n);

struct TrcoPair {
    Kernel c;  // density g
    Kernel b;  // density f
};

// Kernels with C f = B g: the cell-compiled sampled densities g and f.
TrcoPair trco_pair(const GridFunction& f, const GridFunction& g);

// Kernel with cells h * d_m from a sampled density d.
Kernel sampled_density_kernel(const GridFunction& density);

// ||(CM - B) V^{z+1} f - (z+1) C V V^{z+1} f||_inf / ||(z+1) C V V^{z+1} f||_inf
// with C = density f, B = density Mf.
double brbrb_residual(const GridFunction& f, Complex z);

}  // namespace truncon
