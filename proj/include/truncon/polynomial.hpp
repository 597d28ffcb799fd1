#pragma once

#include <vector>

#include "truncon/types.hpp"

namespace truncon {

// Dense polynomial with complex coefficients, c[j] multiplying x^j.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs);

    static Polynomial constant(Complex c) { return Polynomial({c}); }
    static Polynomial monomial(std::size_t degree, Complex c = 1.0);

    const std::vector<Complex>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // -1 for the zero polynomial
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_real() const;

    Complex operator()(Complex x) const;
    Complex operator()(double x) const { return (*this)(Complex(x)); }

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(Complex s) const;

    // x -> p(a x + b)
    Polynomial compose_linear(Complex a, Complex b) const;
    Polynomial antiderivative() const;
    Complex integrate(double lo, double hi) const;

private:
    void trim();
    std::vector<Complex> c_;
};

}  // namespace truncon
