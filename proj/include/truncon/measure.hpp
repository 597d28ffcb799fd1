#pragma once

#include <variant>
#include <vector>

#include "truncon/kernel.hpp"
#include "truncon/polynomial.hpp"
#include "truncon/types.hpp"

namespace truncon {

struct Atom {
    double t = 0.0;
    Complex w = 1.0;
};

// Polynomial density (in the absolute variable x) supported on [lo, hi).
struct PolynomialPiece {
    Polynomial density;
    double lo = 0.0;
    double hi = 1.0;
};

// weight * x^{z-1} / Gamma(z) on (0, 1), Re z > 0.
struct PowerLawPiece {
    Complex z = 1.0;
    Complex weight = 1.0;
};

using MeasurePiece = std::variant<PolynomialPiece, PowerLawPiece>;

/**
 * Finite Borel measure on [0,1): point masses plus piecewise densities.
 *
 * Construction normalizes the representation: atoms at the same location are
 * merged, polynomial pieces on identical intervals are summed, and zero atoms
 * or zero densities are dropped. Immutable afterwards.
 */
class Measure {
public:
    Measure() = default;
    Measure(std::vector<Atom> atoms, std::vector<MeasurePiece> pieces);

    static Measure dirac(double t = 0.0, Complex w = 1.0);
    static Measure lebesgue();
    static Measure polynomial_density(Polynomial density, double lo = 0.0, double hi = 1.0);
    // Density weight * x^{z-1}/Gamma(z); the measure behind V^z.
    static Measure power_law(Complex z, Complex weight = 1.0);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<MeasurePiece>& pieces() const { return pieces_; }
    bool is_zero() const { return atoms_.empty() && pieces_.empty(); }
    bool has_power_law() const;

    Measure operator+(const Measure& other) const;
    Measure scaled(Complex c) const;
    // The same measure with atoms removed.
    Measure density_part() const;

private:
    std::vector<Atom> atoms_;
    std::vector<MeasurePiece> pieces_;
};

double total_variation(const Measure& mu);

// mu reweighted by rho(x) = -x.
Measure derivative_measure(const Measure& mu);

// Restriction to [0,1) of mu * nu. Atoms and polynomial pieces only.
Measure convolve(const Measure& mu, const Measure& nu);

// 1 for the zero measure.
double inf_support_measure(const Measure& mu);
// 0 for the zero measure.
double sup_support_measure(const Measure& mu);

Complex atom_at_zero(const Measure& mu);

// k_m = atoms at m h plus the integral of the density over [m h, (m+1) h).
Kernel to_kernel(const Measure& mu, std::size_t n);

}  // namespace truncon
