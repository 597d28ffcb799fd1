#include "truncon/polynomial.hpp"

#include <algorithm>

namespace truncon {

Polynomial::Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::monomial(std::size_t degree, Complex c) {
    std::vector<Complex> v(degree + 1);
    v[degree] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
}

bool Polynomial::is_real() const {
    return std::all_of(c_.begin(), c_.end(), [](const Complex& c) { return c.imag() == 0.0; });
}

Complex Polynomial::operator()(Complex x) const {
    Complex acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Complex> out(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Complex(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Complex> out(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(Complex s) const {
    std::vector<Complex> out(c_);
    for (auto& c : out) c *= s;
    return Polynomial(std::move(out));
}

Polynomial Polynomial::compose_linear(Complex a, Complex b) const {
    // Horner in polynomial arithmetic: ((c_d) * (a x + b) + c_{d-1}) * ...
    const Polynomial lin({b, a});
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
    return acc;
}

Polynomial Polynomial::antiderivative() const {
    std::vector<Complex> out(c_.size() + 1);
    for (std::size_t j = 0; j < c_.size(); ++j) out[j + 1] = c_[j] / static_cast<double>(j + 1);
    return Polynomial(std::move(out));
}

Complex Polynomial::integrate(double lo, double hi) const {
    const auto prim = antiderivative();
    return prim(hi) - prim(lo);
}

}  // namespace truncon
