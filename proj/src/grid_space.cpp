#include "truncon/grid_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace truncon {

NormIndex parse_norm_index(const std::string& text) {
    if (text == "1") return NormIndex::One;
    if (text == "2") return NormIndex::Two;
    if (text == "inf" || text == "Inf" || text == "INF") return NormIndex::Inf;
    throw InputError("norm index must be one of 1, 2, inf (got '" + text + "')");
}

std::string to_string(NormIndex p) {
    switch (p) {
        case NormIndex::One: return "1";
        case NormIndex::Two: return "2";
        case NormIndex::Inf: return "inf";
    }
    return "?";
}

GridFunction::GridFunction(std::vector<Complex> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw InputError("grid function needs at least one node");
    }
    for (const auto& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw NumericalError("grid function has a non-finite entry");
        }
    }
}

GridFunction GridFunction::zeros(std::size_t n) { return GridFunction(std::vector<Complex>(n)); }

GridFunction GridFunction::scaled(Complex c) const {
    std::vector<Complex> out(values_);
    for (auto& v : out) v *= c;
    return GridFunction(std::move(out));
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
    if (other.size() != size()) throw InputError("grid size mismatch in sum");
    std::vector<Complex> out(values_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.values_[i];
    return GridFunction(std::move(out));
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
    if (other.size() != size()) throw InputError("grid size mismatch in difference");
    std::vector<Complex> out(values_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.values_[i];
    return GridFunction(std::move(out));
}

FunctionSpec FunctionSpec::polynomial(std::vector<Complex> coeffs) {
    return FunctionSpec{PolynomialFn{std::move(coeffs)}};
}

FunctionSpec FunctionSpec::power(double gamma) { return FunctionSpec{PowerFn{gamma}}; }

FunctionSpec FunctionSpec::shifted(double t0, FunctionSpec inner) {
    return FunctionSpec{ShiftedFn{t0, std::make_shared<const FunctionSpec>(std::move(inner))}};
}

FunctionSpec FunctionSpec::samples(std::vector<Complex> values) {
    return FunctionSpec{SampledFn{std::move(values)}};
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_grid_size(std::size_t n) {
    if (n < 4 || !is_power_of_two(n)) {
        throw InputError("grid size N must be a power of two and at least 4 (got " +
                         std::to_string(n) + "); fast convolution needs radix-2 lengths");
    }
}

bool is_grid_aligned(double t, std::size_t n) {
    const double scaled = t * static_cast<double>(n);
    return std::abs(scaled - std::round(scaled)) <= 1e-9;
}

namespace {

std::vector<Complex> sample(const FunctionSpec& spec, std::size_t n) {
    const double dn = static_cast<double>(n);
    return std::visit(
        [&](const auto& fn) -> std::vector<Complex> {
            using T = std::decay_t<decltype(fn)>;
            std::vector<Complex> out(n);
            if constexpr (std::is_same_v<T, PolynomialFn>) {
                if (fn.coeffs.size() > kMaxPolynomialDegree + 1) {
                    throw InputError("polynomial degree exceeds " +
                                     std::to_string(kMaxPolynomialDegree));
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double x = static_cast<double>(i + 1) / dn;
                    Complex acc{};
                    for (auto c = fn.coeffs.rbegin(); c != fn.coeffs.rend(); ++c) acc = acc * x + *c;
                    out[i] = acc;
                }
            } else if constexpr (std::is_same_v<T, PowerFn>) {
                if (!(fn.gamma > -1.0)) {
                    throw InputError("power exponent must exceed -1 for an integrable function");
                }
                for (std::size_t i = 0; i < n; ++i) {
                    out[i] = std::pow(static_cast<double>(i + 1) / dn, fn.gamma);
                }
            } else if constexpr (std::is_same_v<T, ShiftedFn>) {
                if (!fn.inner) throw InputError("shifted function has no inner spec");
                if (!(fn.t0 >= 0.0 && fn.t0 < 1.0)) {
                    throw InputError("shift offset must lie in [0,1)");
                }
                if (!is_grid_aligned(fn.t0, n)) {
                    throw InputError("shift offset " + std::to_string(fn.t0) +
                                     " is not a multiple of 1/N for N=" + std::to_string(n));
                }
                const auto s = static_cast<std::size_t>(std::llround(fn.t0 * dn));
                const auto inner = sample(*fn.inner, n);
                for (std::size_t i = s; i < n; ++i) out[i] = inner[i - s];
            } else {
                if (fn.values.size() != n) {
                    throw InputError("explicit samples have length " +
                                     std::to_string(fn.values.size()) + ", expected N=" +
                                     std::to_string(n));
                }
                out = fn.values;
            }
            return out;
        },
        spec.variant);
}

}  // namespace

GridFunction make_grid_function(const FunctionSpec& spec, std::size_t n) {
    require_grid_size(n);
    return GridFunction(sample(spec, n));
}

double norm(const GridFunction& f, NormIndex p) {
    const auto v = f.values();
    switch (p) {
        case NormIndex::One: {
            double s = 0.0;
            for (const auto& x : v) s += std::abs(x);
            return s * f.step();
        }
        case NormIndex::Two: {
            double s = 0.0;
            for (const auto& x : v) s += std::norm(x);
            return std::sqrt(s * f.step());
        }
        case NormIndex::Inf: {
            double m = 0.0;
            for (const auto& x : v) m = std::max(m, std::abs(x));
            return m;
        }
    }
    return 0.0;
}

double inf_support(const GridFunction& f, double tol) {
    if (tol < 0.0) throw InputError("support tolerance must be nonnegative");
    const double peak = norm(f, NormIndex::Inf);
    if (peak == 0.0) return 1.0;
    const double threshold = tol * peak;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (std::abs(f[i]) > threshold) return f.node(i);
    }
    return 1.0;
}

GridFunction multiply_by_argument(const GridFunction& f) {
    std::vector<Complex> out(f.values().begin(), f.values().end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= f.node(i);
    return GridFunction(std::move(out));
}

}  // namespace truncon
