#pragma once

#include <cstdint>
#include <span>
#include <stop_token>
#include <vector>

#include "truncon/convolution.hpp"
#include "truncon/grid_space.hpp"
#include "truncon/types.hpp"

namespace truncon {

/**
 * Discrete truncated convolution operator on an N-point grid.
 *
 * Represents e^{log_scale} * Toeplitz(k), where k is the first column of a
 * lower-triangular Toeplitz matrix and k[0] is its (constant) diagonal:
 *
 *     (T f)[i] = e^{log_scale} * sum_{m=0}^{i} k[m] f[i-m].
 *
 * Renormalizing operations (compose, power, exp/log, sums) rescale k by an
 * exact power of two so that max|k| lies in [0.5, 2] and push the factor into
 * log_scale; constructors keep k as given.
 */
class Kernel {
public:
    explicit Kernel(std::vector<Complex> k, double log_scale = 0.0);

    static Kernel identity(std::size_t n);
    static Kernel zero(std::size_t n);

    std::size_t size() const { return k_.size(); }
    double step() const { return 1.0 / static_cast<double>(k_.size()); }
    double log_scale() const { return log_scale_; }
    std::span<const Complex> raw() const { return k_; }

    // e^{log_scale} k[m]; may overflow for large log_scale.
    Complex coefficient(std::size_t m) const;
    std::vector<Complex> coefficients() const;
    // The single point of the spectrum.
    Complex diagonal() const { return coefficient(0); }

    bool is_zero() const;
    std::size_t leading_index() const;

    Kernel renormalized() const;
    Kernel scaled(Complex c) const;
    Kernel operator+(const Kernel& other) const;
    Kernel operator-(const Kernel& other) const;

private:
    std::vector<Complex> k_;
    double log_scale_;
};

struct RLSpec {
    Complex z;
    explicit RLSpec(Complex order);
};

GridFunction apply(const Kernel& t, const GridFunction& f,
                   ConvolutionMethod method = ConvolutionMethod::Automatic);

// Repeated application of one kernel with its spectrum computed once.
class KernelOperator {
public:
    explicit KernelOperator(const Kernel& t);

    std::size_t size() const { return convolver_.size(); }
    // Returns Toeplitz(k) f; the caller accounts for log_scale.
    std::vector<Complex> apply_unscaled(std::span<const Complex> f) const;
    GridFunction operator()(const GridFunction& f) const;

private:
    double log_scale_;
    detail::SpectralConvolver convolver_;
};

Kernel compose(const Kernel& a, const Kernel& b);

// T^n by repeated squaring; throws Cancelled when `stop` is requested.
Kernel power(const Kernel& t, std::uint64_t n, std::stop_token stop = {});

// Product-integration weights of the Riemann-Liouville integral of order z.
Kernel riemann_liouville(const RLSpec& spec, std::size_t n);
Kernel volterra(std::size_t n);

// log of the induced L^1 (= L^inf) norm: log_scale + ln sum|k|; -inf for zero.
double operator_norm_1(const Kernel& t);

Kernel op_exp(const Kernel& a);
Kernel op_log_of_identity_plus(const Kernel& s);

// T(Mf) - M(Tf)
GridFunction commutator_with_M(const Kernel& t, const GridFunction& f);

// Left edge m*h of the first cell with |k_m| > tol * max|k|; 1 for zero.
double kernel_inf_support(const Kernel& t, double tol = kDefaultSupportTolerance);

// Column-sum norm of a - b divided by the larger of the two column sums.
double relative_distance(const Kernel& a, const Kernel& b);

}  // namespace truncon
