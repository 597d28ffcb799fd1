#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "truncon/types.hpp"

namespace truncon {

/**
 * Sampled representative of a function on [0,1].
 *
 * values[i] approximates f(x_i) at the right endpoints x_i = (i+1)/N, so the
 * node x = 0 is never stored. Immutable after construction.
 */
class GridFunction {
public:
    GridFunction(std::vector<Complex> values);

    static GridFunction zeros(std::size_t n);

    std::size_t size() const { return values_.size(); }
    double step() const { return 1.0 / static_cast<double>(values_.size()); }
    double node(std::size_t i) const {
        return static_cast<double>(i + 1) / static_cast<double>(values_.size());
    }

    std::span<const Complex> values() const { return values_; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }

    GridFunction scaled(Complex c) const;
    GridFunction operator+(const GridFunction& other) const;
    GridFunction operator-(const GridFunction& other) const;

private:
    std::vector<Complex> values_;
};

struct FunctionSpec;

struct PolynomialFn {
    std::vector<Complex> coeffs;  // coeffs[j] multiplies x^j
};

struct PowerFn {
    double gamma = 0.0;  // x^gamma, gamma > -1
};

struct ShiftedFn {
    double t0 = 0.0;
    std::shared_ptr<const FunctionSpec> inner;
};

struct SampledFn {
    std::vector<Complex> values;
};

struct FunctionSpec {
    std::variant<PolynomialFn, PowerFn, ShiftedFn, SampledFn> variant;

    static FunctionSpec polynomial(std::vector<Complex> coeffs);
    static FunctionSpec power(double gamma);
    static FunctionSpec shifted(double t0, FunctionSpec inner);
    static FunctionSpec samples(std::vector<Complex> values);
};

inline constexpr std::size_t kMaxPolynomialDegree = 64;
inline constexpr double kDefaultSupportTolerance = 1e-9;

bool is_power_of_two(std::size_t n);

// Throws InputError unless N >= 4 and N is a power of two.
void require_grid_size(std::size_t n);

// True when t*N is an integer (up to 1e-9 absolute slack in the product).
bool is_grid_aligned(double t, std::size_t n);

GridFunction make_grid_function(const FunctionSpec& spec, std::size_t n);

double norm(const GridFunction& f, NormIndex p);

// First node where |f| exceeds tol * max|f|; 1 for the zero function.
double inf_support(const GridFunction& f, double tol = kDefaultSupportTolerance);

// (Mf)(x) = x f(x)
GridFunction multiply_by_argument(const GridFunction& f);

}  // namespace truncon
