#pragma once

#include <memory>
#include <span>
#include <vector>

#include "truncon/types.hpp"

namespace truncon {

enum class ConvolutionMethod { Automatic, Direct, Fast };

namespace detail {

// Index of the first exactly-nonzero entry, or size() if none.
std::size_t leading_index(std::span<const Complex> a);
std::size_t count_nonzero(std::span<const Complex> a);

// out[i] = sum_{m<=i} a[m] b[i-m] for i < n, n = a.size() = b.size().
std::vector<Complex> truncated_convolution_direct(std::span<const Complex> a,
                                                  std::span<const Complex> b);

// Same product, iterating only over the nonzeros of `sparse`. Exact whenever
// the products and sums involved are exact (atoms on grid points).
std::vector<Complex> truncated_convolution_sparse(std::span<const Complex> sparse,
                                                  std::span<const Complex> dense);

// Zero-padded radix-2 cyclic convolution of length 2n. Entries below
// leading_index(a) + leading_index(b) are set to exact zero.
std::vector<Complex> truncated_convolution_fast(std::span<const Complex> a,
                                                std::span<const Complex> b);

std::vector<Complex> truncated_convolution(std::span<const Complex> a,
                                           std::span<const Complex> b,
                                           ConvolutionMethod method = ConvolutionMethod::Automatic);

/**
 * Precomputed spectrum of one operand for repeated truncated convolutions
 * against inputs of the same length. Holds no mutable state after
 * construction, so a single instance may be shared across threads.
 */
class SpectralConvolver {
public:
    explicit SpectralConvolver(std::span<const Complex> a);

    std::size_t size() const { return n_; }
    std::vector<Complex> operator()(std::span<const Complex> b) const;

private:
    std::size_t n_;
    std::size_t lead_;
    std::size_t nonzeros_;
    std::vector<Complex> a_;
    std::vector<Complex> spectrum_;
};

}  // namespace detail
}  // namespace truncon
