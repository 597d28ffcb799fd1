#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library beyond reading plain vectors, so a bug in the library cannot
// cancel out against its oracle.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "truncon/grid_space.hpp"
#include "truncon/kernel.hpp"

namespace oracle {

using LComplex = std::complex<long double>;
using truncon::Complex;

// Dense lower-triangular Toeplitz matrix times vector, in long double.
inline std::vector<Complex> toeplitz_apply(const std::vector<Complex>& k, const std::vector<Complex>& f,
                                           long double scale = 1.0L) {
    const std::size_t n = k.size();
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        LComplex acc = 0.0L;
        for (std::size_t j = 0; j <= i; ++j) acc += LComplex(k[i - j]) * LComplex(f[j]);
        acc *= scale;
        out[i] = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    return out;
}

inline std::vector<Complex> kernel_entries(const truncon::Kernel& t) {
    std::vector<Complex> k;
    const long double scale = std::exp(static_cast<long double>(t.log_scale()));
    for (const auto& c : t.raw()) k.emplace_back(static_cast<double>(c.real() * scale), static_cast<double>(c.imag() * scale));
    return k;
}

inline std::vector<Complex> values(const truncon::GridFunction& f) { return {f.values().begin(), f.values().end()}; }

// ln C(a, b) in long double.
inline long double log_binomial(long double a, long double b) {
    return std::lgamma(a + 1) - std::lgamma(b + 1) - std::lgamma(a - b + 1);
}

// (V_h^n 1) at node i: h^n C(i+n, n), from the hockey-stick identity.
inline long double discrete_volterra_power_on_one(std::size_t i, std::size_t n, std::size_t big_n) {
    const long double h = 1.0L / static_cast<long double>(big_n);
    return std::exp(static_cast<long double>(n) * std::log(h) +
                    log_binomial(static_cast<long double>(i + n), static_cast<long double>(n)));
}

// ln of the column sum of V_h^n: h^n C(N+n-1, n).
inline long double discrete_volterra_power_norm(std::size_t n, std::size_t big_n) {
    const long double h = 1.0L / static_cast<long double>(big_n);
    return static_cast<long double>(n) * std::log(h) +
           log_binomial(static_cast<long double>(big_n + n - 1), static_cast<long double>(n));
}

// ln ||(I + s V_h)^n 1||_1 on the grid, s = +-1, summed exactly in long double
// as sum_k C(n,k) s^k (V_h^k 1).
inline long double discrete_identity_plus_volterra_log_l1(std::size_t n, std::size_t big_n, int s) {
    const long double h = 1.0L / static_cast<long double>(big_n);
    long double total = 0.0L;
    for (std::size_t i = 0; i < big_n; ++i) {
        long double acc = 0.0L;
        for (std::size_t k = 0; k <= n; ++k) {
            const long double term = std::exp(log_binomial(n, k) + static_cast<long double>(k) * std::log(h) +
                                              log_binomial(static_cast<long double>(i + k), static_cast<long double>(k)));
            acc += (s < 0 && (k % 2 == 1)) ? -term : term;
        }
        total += std::fabs(acc);
    }
    return std::log(total * h);
}

// Cell integral of a real polynomial by Simpson's rule, exact up to degree 3.
inline long double simpson_cell(const std::vector<long double>& c, long double lo, long double hi) {
    auto p = [&](long double x) {
        long double acc = 0.0L;
        for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
        return acc;
    };
    return (hi - lo) / 6.0L * (p(lo) + 4.0L * p(0.5L * (lo + hi)) + p(hi));
}

struct Generator {
    explicit Generator(std::uint64_t seed) : rng(seed) {}
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }
    Complex complex(double r = 1.0) { return {real(-r, r), real(-r, r)}; }
    std::vector<Complex> vector(std::size_t n, double r = 1.0) {
        std::vector<Complex> v(n);
        for (auto& x : v) x = complex(r);
        return v;
    }
    std::size_t grid(std::size_t lo_log2, std::size_t hi_log2) { return std::size_t{1} << index(lo_log2, hi_log2); }

    std::mt19937_64 rng;
};

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const std::vector<Complex>& a) {
    double m = 0.0;
    for (const auto& x : a) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace oracle
