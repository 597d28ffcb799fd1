#include "truncon/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "truncon/special_functions.hpp"

namespace truncon {

namespace {

constexpr double kSeriesRelativeCutoff = 1e-16;

double peak_magnitude(std::span<const Complex> k) {
    double peak = 0.0;
    for (const auto& c : k) peak = std::max(peak, std::abs(c));
    return peak;
}

double column_sum(std::span<const Complex> k) {
    double s = 0.0;
    for (const auto& c : k) s += std::abs(c);
    return s;
}

void require_same_size(const Kernel& a, const Kernel& b, const char* what) {
    if (a.size() != b.size()) {
        throw InputError(std::string(what) + ": kernel sizes differ (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
    }
}

// Lexicographic order on (k, log_scale); makes compose symmetric bit-for-bit.
bool canonical_less(const Kernel& a, const Kernel& b) {
    const auto ka = a.raw();
    const auto kb = b.raw();
    for (std::size_t i = 0; i < ka.size(); ++i) {
        if (ka[i].real() != kb[i].real()) return ka[i].real() < kb[i].real();
        if (ka[i].imag() != kb[i].imag()) return ka[i].imag() < kb[i].imag();
    }
    return a.log_scale() < b.log_scale();
}

// (m+1)^z - m^z and h^z / Gamma(z+1) in exact arithmetic for small integer z.
bool integer_order_weights(Complex z, double h, std::size_t n, std::vector<Complex>& out) {
    if (z.imag() != 0.0 || z.real() != std::round(z.real())) return false;
    const double order = z.real();
    if (order < 1.0 || order > 8.0) return false;
    if (std::pow(static_cast<double>(n), order) >= 9007199254740992.0) return false;
    const int p = static_cast<int>(order);
    double scale = 1.0;
    for (int j = 1; j <= p; ++j) scale = scale * h / static_cast<double>(j);
    out.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        double hi = 1.0;
        double lo = 1.0;
        for (int j = 0; j < p; ++j) {
            hi *= static_cast<double>(m + 1);
            lo *= static_cast<double>(m);
        }
        out[m] = (hi - lo) * scale;
    }
    return true;
}

}  // namespace

Kernel::Kernel(std::vector<Complex> k, double log_scale) : k_(std::move(k)), log_scale_(log_scale) {
    if (k_.empty() || !is_power_of_two(k_.size())) {
        throw InputError("kernel length must be a power of two (got " + std::to_string(k_.size()) +
                         ")");
    }
    if (!std::isfinite(log_scale_)) throw NumericalError("kernel log-scale is not finite");
    for (const auto& c : k_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw NumericalError("kernel has a non-finite entry");
        }
    }
}

Kernel Kernel::identity(std::size_t n) {
    std::vector<Complex> k(n);
    if (n > 0) k[0] = 1.0;
    return Kernel(std::move(k));
}

Kernel Kernel::zero(std::size_t n) { return Kernel(std::vector<Complex>(n)); }

Complex Kernel::coefficient(std::size_t m) const { return k_.at(m) * std::exp(log_scale_); }

std::vector<Complex> Kernel::coefficients() const {
    const double factor = std::exp(log_scale_);
    std::vector<Complex> out(k_);
    for (auto& c : out) c *= factor;
    return out;
}

bool Kernel::is_zero() const { return detail::leading_index(k_) == k_.size(); }

std::size_t Kernel::leading_index() const { return detail::leading_index(k_); }

Kernel Kernel::renormalized() const {
    const double peak = peak_magnitude(k_);
    if (peak == 0.0) return zero(k_.size());
    if (peak >= 0.5 && peak <= 2.0) return *this;
    int e = 0;
    std::frexp(peak, &e);
    std::vector<Complex> k(k_);
    for (auto& c : k) c = {std::ldexp(c.real(), -e), std::ldexp(c.imag(), -e)};
    return Kernel(std::move(k), log_scale_ + e * std::numbers::ln2);
}

Kernel Kernel::scaled(Complex c) const {
    if (c == Complex{}) return zero(size());
    // Split c into modulus (log-scale) and phase to stay overflow-free.
    const double mag = std::abs(c);
    const Complex phase = c / mag;
    std::vector<Complex> k(k_);
    for (auto& v : k) v *= phase;
    return Kernel(std::move(k), log_scale_ + std::log(mag)).renormalized();
}

Kernel Kernel::operator+(const Kernel& other) const {
    require_same_size(*this, other, "kernel sum");
    if (other.is_zero()) return renormalized();
    if (is_zero()) return other.renormalized();
    const double common = std::max(log_scale_, other.log_scale_);
    const double wa = std::exp(log_scale_ - common);
    const double wb = std::exp(other.log_scale_ - common);
    std::vector<Complex> k(k_.size());
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = k_[i] * wa + other.k_[i] * wb;
    return Kernel(std::move(k), common).renormalized();
}

Kernel Kernel::operator-(const Kernel& other) const { return *this + other.scaled(-1.0); }

RLSpec::RLSpec(Complex order) : z(order) {
    if (!(order.real() > 0.0)) {
        throw InputError("Riemann-Liouville order needs Re z > 0 (got Re z = " +
                         std::to_string(order.real()) + ")");
    }
}

GridFunction apply(const Kernel& t, const GridFunction& f, ConvolutionMethod method) {
    if (t.size() != f.size()) {
        throw InputError("apply: kernel has N=" + std::to_string(t.size()) +
                         " but function has N=" + std::to_string(f.size()));
    }
    auto out = detail::truncated_convolution(t.raw(), f.values(), method);
    if (t.log_scale() != 0.0) {
        const double factor = std::exp(t.log_scale());
        for (auto& v : out) v *= factor;
    }
    return GridFunction(std::move(out));
}

KernelOperator::KernelOperator(const Kernel& t) : log_scale_(t.log_scale()), convolver_(t.raw()) {}

std::vector<Complex> KernelOperator::apply_unscaled(std::span<const Complex> f) const {
    return convolver_(f);
}

GridFunction KernelOperator::operator()(const GridFunction& f) const {
    auto out = convolver_(f.values());
    if (log_scale_ != 0.0) {
        const double factor = std::exp(log_scale_);
        for (auto& v : out) v *= factor;
    }
    return GridFunction(std::move(out));
}

Kernel compose(const Kernel& a, const Kernel& b) {
    require_same_size(a, b, "compose");
    const Kernel na = a.renormalized();
    const Kernel nb = b.renormalized();
    if (na.is_zero() || nb.is_zero()) return Kernel::zero(a.size());
    const bool swap = canonical_less(nb, na);
    const Kernel& first = swap ? nb : na;
    const Kernel& second = swap ? na : nb;
    auto k = detail::truncated_convolution(first.raw(), second.raw());
    return Kernel(std::move(k), first.log_scale() + second.log_scale()).renormalized();
}

Kernel power(const Kernel& t, std::uint64_t n, std::stop_token stop) {
    if (n == 0) throw InputError("power: exponent must be at least 1");
    Kernel base = t.renormalized();
    Kernel result = Kernel::identity(t.size());
    bool have_result = false;
    while (n > 0) {
        if (stop.stop_requested()) throw Cancelled();
        if (n & 1U) {
            result = have_result ? compose(result, base) : base;
            have_result = true;
        }
        n >>= 1U;
        if (n > 0) base = compose(base, base);
    }
    return result;
}

Kernel riemann_liouville(const RLSpec& spec, std::size_t n) {
    if (!is_power_of_two(n)) throw InputError("grid size must be a power of two");
    const double h = 1.0 / static_cast<double>(n);
    std::vector<Complex> k;
    if (!integer_order_weights(spec.z, h, n, k)) {
        k.resize(n);
        for (std::size_t m = 0; m < n; ++m) k[m] = power_law_cell_integral(m, spec.z, h);
    }
    return Kernel(std::move(k));
}

Kernel volterra(std::size_t n) { return riemann_liouville(RLSpec(1.0), n); }

double operator_norm_1(const Kernel& t) {
    const double s = column_sum(t.raw());
    if (s == 0.0) return -std::numeric_limits<double>::infinity();
    return t.log_scale() + std::log(s);
}

Kernel op_exp(const Kernel& a) {
    const std::size_t n = a.size();
    Kernel sum = Kernel::identity(n);
    Kernel term = Kernel::identity(n);
    const std::size_t cap = 4 * n;
    for (std::size_t j = 1; j <= cap; ++j) {
        term = compose(term, a).scaled(1.0 / static_cast<double>(j));
        if (term.is_zero()) break;
        sum = sum + term;
        if (operator_norm_1(term) < operator_norm_1(sum) + std::log(kSeriesRelativeCutoff)) break;
    }
    return sum;
}

Kernel op_log_of_identity_plus(const Kernel& s) {
    const double radius = std::abs(s.diagonal());
    if (!(radius < 1.0)) {
        throw InputError("logarithm of I+S needs spectral radius of S below 1 (got " +
                         std::to_string(radius) + ")");
    }
    const std::size_t n = s.size();
    Kernel sum = Kernel::zero(n);
    Kernel pow = s.renormalized();
    const std::size_t cap = 4 * n;
    for (std::size_t j = 1; j <= cap && !pow.is_zero(); ++j) {
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        const Kernel term = pow.scaled(sign / static_cast<double>(j));
        sum = sum + term;
        if (operator_norm_1(term) < operator_norm_1(sum) + std::log(kSeriesRelativeCutoff)) break;
        pow = compose(pow, s);
    }
    return sum;
}

GridFunction commutator_with_M(const Kernel& t, const GridFunction& f) {
    return apply(t, multiply_by_argument(f)) - multiply_by_argument(apply(t, f));
}

double kernel_inf_support(const Kernel& t, double tol) {
    if (tol < 0.0) throw InputError("support tolerance must be nonnegative");
    const auto k = t.raw();
    const double peak = peak_magnitude(k);
    if (peak == 0.0) return 1.0;
    for (std::size_t m = 0; m < k.size(); ++m) {
        if (std::abs(k[m]) > tol * peak) return static_cast<double>(m) * t.step();
    }
    return 1.0;
}

double relative_distance(const Kernel& a, const Kernel& b) {
    require_same_size(a, b, "relative_distance");
    if (a.is_zero() && b.is_zero()) return 0.0;
    const double common = std::max(a.is_zero() ? b.log_scale() : a.log_scale(),
                                   b.is_zero() ? a.log_scale() : b.log_scale());
    const double wa = std::exp(a.log_scale() - common);
    const double wb = std::exp(b.log_scale() - common);
    double diff = 0.0;
    const auto ka = a.raw();
    const auto kb = b.raw();
    for (std::size_t i = 0; i < ka.size(); ++i) diff += std::abs(ka[i] * wa - kb[i] * wb);
    const double denom = std::max(column_sum(ka) * wa, column_sum(kb) * wb);
    return diff / denom;
}

}  // namespace truncon
