#include "truncon/measure.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <map>

#include "truncon/special_functions.hpp"

namespace truncon {

namespace {

constexpr double kLocationTolerance = 1e-12;

bool same_location(double a, double b) { return std::abs(a - b) <= kLocationTolerance; }

void validate_atom(const Atom& a) {
    if (!(a.t >= 0.0 && a.t < 1.0)) {
        throw InputError("atom location " + std::to_string(a.t) + " is outside [0,1)");
    }
    if (!std::isfinite(a.w.real()) || !std::isfinite(a.w.imag())) {
        throw InputError("atom weight is not finite");
    }
}

void validate_piece(const MeasurePiece& piece) {
    if (const auto* p = std::get_if<PolynomialPiece>(&piece)) {
        if (!(p->lo >= 0.0 && p->lo < p->hi && p->hi <= 1.0)) {
            throw InputError("polynomial piece interval [" + std::to_string(p->lo) + ", " +
                             std::to_string(p->hi) + ") is not inside [0,1)");
        }
    } else {
        const auto& q = std::get<PowerLawPiece>(piece);
        if (!(q.z.real() > 0.0)) {
            throw InputError("power-law density needs Re z > 0 (got " +
                             std::to_string(q.z.real()) + ")");
        }
    }
}

// Integral of |p| over [lo, hi) for a real polynomial: split at sign changes
// and integrate the antiderivative exactly on each sign-definite stretch.
double abs_integral_real(const Polynomial& p, double lo, double hi) {
    const auto prim = p.antiderivative();
    auto real_at = [&](double x) { return p(x).real(); };
    constexpr int kSamples = 1024;
    std::vector<double> cuts{lo};
    double prev_x = lo;
    double prev_v = real_at(lo);
    for (int i = 1; i <= kSamples; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / kSamples;
        const double v = real_at(x);
        if (v == 0.0) {
            // a root on a sample point; the next stretch starts from a zero value
            if (x < hi) cuts.push_back(x);
            prev_x = x;
            prev_v = 0.0;
            continue;
        }
        if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
            auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * (1.0 + std::abs(a)); };
            const auto bracket = boost::math::tools::bisect(real_at, prev_x, x, tol);
            cuts.push_back(0.5 * (bracket.first + bracket.second));
        }
        prev_x = x;
        prev_v = v;
    }
    cuts.push_back(hi);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += std::abs((prim(cuts[i + 1]) - prim(cuts[i])).real());
    }
    return total;
}

double abs_integral(const Polynomial& p, double lo, double hi) {
    if (p.is_zero()) return 0.0;
    if (p.is_real()) return abs_integral_real(p, lo, hi);
    auto f = [&](double x) { return std::abs(p(x)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, 1e-14);
}

Polynomial shift_polynomial(const Polynomial& p, double t) { return p.compose_linear(1.0, -t); }

double binomial(std::size_t n, std::size_t k) {
    double r = 1.0;
    for (std::size_t j = 1; j <= k; ++j) r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
    return r;
}

// Density of the restriction to [0,1) of (P 1_[l1,r1)) * (Q 1_[l2,r2)).
std::vector<PolynomialPiece> convolve_pieces(const PolynomialPiece& a, const PolynomialPiece& b) {
    const auto& pc = b.density.coeffs();
    // Q(x - t) = sum_j t^j A_j(x),  A_j(x) = sum_k q_k C(k,j) (-1)^j x^{k-j}.
    std::vector<Polynomial> weights(pc.size());
    for (std::size_t k = 0; k < pc.size(); ++k) {
        for (std::size_t j = 0; j <= k; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            weights[j] = weights[j] + Polynomial::monomial(k - j, pc[k] * binomial(k, j) * sign);
        }
    }
    std::vector<Polynomial> prims(pc.size());
    for (std::size_t j = 0; j < pc.size(); ++j) {
        prims[j] = (Polynomial::monomial(j) * a.density).antiderivative();
    }

    std::vector<double> breaks{a.lo + b.lo, a.lo + b.hi, a.hi + b.lo, a.hi + b.hi};
    for (auto& x : breaks) x = std::min(x, 1.0);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<PolynomialPiece> out;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double lo = breaks[i];
        const double hi = breaks[i + 1];
        if (!(lo < hi)) continue;
        const double mid = 0.5 * (lo + hi);
        // t ranges over [max(l1, x - r2), min(r1, x - l2)].
        const bool lower_const = a.lo >= mid - b.hi;
        const bool upper_const = a.hi <= mid - b.lo;
        const double lower_mid = lower_const ? a.lo : mid - b.hi;
        const double upper_mid = upper_const ? a.hi : mid - b.lo;
        if (!(lower_mid < upper_mid)) continue;
        Polynomial g;
        for (std::size_t j = 0; j < pc.size(); ++j) {
            if (weights[j].is_zero()) continue;
            const Polynomial upper = upper_const ? Polynomial::constant(prims[j](a.hi))
                                                 : prims[j].compose_linear(1.0, -b.lo);
            const Polynomial lower = lower_const ? Polynomial::constant(prims[j](a.lo))
                                                 : prims[j].compose_linear(1.0, -b.hi);
            g = g + weights[j] * (upper - lower);
        }
        if (!g.is_zero()) out.push_back({g, lo, hi});
    }
    return out;
}

}  // namespace

Measure::Measure(std::vector<Atom> atoms, std::vector<MeasurePiece> pieces) {
    for (const auto& a : atoms) {
        validate_atom(a);
        auto it = std::find_if(atoms_.begin(), atoms_.end(),
                               [&](const Atom& b) { return same_location(a.t, b.t); });
        if (it == atoms_.end()) {
            atoms_.push_back(a);
        } else {
            it->w += a.w;
        }
    }
    std::erase_if(atoms_, [](const Atom& a) { return a.w == Complex{}; });
    std::sort(atoms_.begin(), atoms_.end(), [](const Atom& x, const Atom& y) { return x.t < y.t; });

    for (auto& piece : pieces) {
        validate_piece(piece);
        if (auto* p = std::get_if<PolynomialPiece>(&piece)) {
            auto it = std::find_if(pieces_.begin(), pieces_.end(), [&](const MeasurePiece& q) {
                const auto* pp = std::get_if<PolynomialPiece>(&q);
                return pp && pp->lo == p->lo && pp->hi == p->hi;
            });
            if (it != pieces_.end()) {
                auto& target = std::get<PolynomialPiece>(*it);
                target.density = target.density + p->density;
                continue;
            }
        } else {
            const auto& q = std::get<PowerLawPiece>(piece);
            if (q.weight == Complex{}) continue;
        }
        pieces_.push_back(std::move(piece));
    }
    std::erase_if(pieces_, [](const MeasurePiece& q) {
        const auto* p = std::get_if<PolynomialPiece>(&q);
        return p && p->density.is_zero();
    });
}

Measure Measure::dirac(double t, Complex w) { return Measure({Atom{t, w}}, {}); }

Measure Measure::lebesgue() { return polynomial_density(Polynomial::constant(1.0)); }

Measure Measure::polynomial_density(Polynomial density, double lo, double hi) {
    return Measure({}, {PolynomialPiece{std::move(density), lo, hi}});
}

Measure Measure::power_law(Complex z, Complex weight) {
    return Measure({}, {PowerLawPiece{z, weight}});
}

bool Measure::has_power_law() const {
    return std::any_of(pieces_.begin(), pieces_.end(), [](const MeasurePiece& p) {
        return std::holds_alternative<PowerLawPiece>(p);
    });
}

Measure Measure::operator+(const Measure& other) const {
    auto atoms = atoms_;
    atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
    auto pieces = pieces_;
    pieces.insert(pieces.end(), other.pieces_.begin(), other.pieces_.end());
    return Measure(std::move(atoms), std::move(pieces));
}

Measure Measure::scaled(Complex c) const {
    auto atoms = atoms_;
    for (auto& a : atoms) a.w *= c;
    auto pieces = pieces_;
    for (auto& piece : pieces) {
        if (auto* p = std::get_if<PolynomialPiece>(&piece)) {
            p->density = p->density * c;
        } else {
            std::get<PowerLawPiece>(piece).weight *= c;
        }
    }
    return Measure(std::move(atoms), std::move(pieces));
}

Measure Measure::density_part() const { return Measure({}, pieces_); }

double total_variation(const Measure& mu) {
    double total = 0.0;
    for (const auto& a : mu.atoms()) total += std::abs(a.w);
    for (const auto& piece : mu.pieces()) {
        if (const auto* p = std::get_if<PolynomialPiece>(&piece)) {
            total += abs_integral(p->density, p->lo, p->hi);
        } else {
            // |x^{z-1}| = x^{Re z - 1}, so the integral over (0,1) is 1/Re z.
            const auto& q = std::get<PowerLawPiece>(piece);
            const double abs_gamma = std::exp(log_gamma(q.z).real());
            total += std::abs(q.weight) / (q.z.real() * abs_gamma);
        }
    }
    return total;
}

Measure derivative_measure(const Measure& mu) {
    std::vector<Atom> atoms;
    for (const auto& a : mu.atoms()) atoms.push_back({a.t, -a.t * a.w});
    std::vector<MeasurePiece> pieces;
    for (const auto& piece : mu.pieces()) {
        if (const auto* p = std::get_if<PolynomialPiece>(&piece)) {
            pieces.emplace_back(PolynomialPiece{p->density * Polynomial::monomial(1, -1.0), p->lo, p->hi});
        } else {
            // -x * x^{z-1}/Gamma(z) = -z * x^z/Gamma(z+1)
            const auto& q = std::get<PowerLawPiece>(piece);
            pieces.emplace_back(PowerLawPiece{q.z + 1.0, -q.z * q.weight});
        }
    }
    return Measure(std::move(atoms), std::move(pieces));
}

Measure convolve(const Measure& mu, const Measure& nu) {
    if (mu.has_power_law() || nu.has_power_law()) {
        throw InputError(
            "symbolic convolution supports atoms and polynomial densities only; compose "
            "power-law measures at kernel level");
    }
    std::vector<Atom> atoms;
    std::vector<MeasurePiece> pieces;
    for (const auto& a : mu.atoms()) {
        for (const auto& b : nu.atoms()) {
            const double t = a.t + b.t;
            if (t < 1.0 - kLocationTolerance) atoms.push_back({t, a.w * b.w});
        }
    }
    auto shifted = [&](const Atom& a, const PolynomialPiece& p) {
        const double lo = p.lo + a.t;
        const double hi = std::min(p.hi + a.t, 1.0);
        if (lo < hi) pieces.emplace_back(PolynomialPiece{shift_polynomial(p.density, a.t) * a.w, lo, hi});
    };
    for (const auto& a : mu.atoms()) {
        for (const auto& q : nu.pieces()) shifted(a, std::get<PolynomialPiece>(q));
    }
    for (const auto& b : nu.atoms()) {
        for (const auto& q : mu.pieces()) shifted(b, std::get<PolynomialPiece>(q));
    }
    for (const auto& p : mu.pieces()) {
        for (const auto& q : nu.pieces()) {
            for (auto& piece : convolve_pieces(std::get<PolynomialPiece>(p), std::get<PolynomialPiece>(q))) {
                pieces.emplace_back(std::move(piece));
            }
        }
    }
    return Measure(std::move(atoms), std::move(pieces));
}

double inf_support_measure(const Measure& mu) {
    double lo = 1.0;
    for (const auto& a : mu.atoms()) lo = std::min(lo, a.t);
    for (const auto& piece : mu.pieces()) {
        if (const auto* p = std::get_if<PolynomialPiece>(&piece)) {
            lo = std::min(lo, p->lo);
        } else {
            lo = 0.0;
        }
    }
    return lo;
}

double sup_support_measure(const Measure& mu) {
    double hi = 0.0;
    for (const auto& a : mu.atoms()) hi = std::max(hi, a.t);
    for (const auto& piece : mu.pieces()) {
        if (const auto* p = std::get_if<PolynomialPiece>(&piece)) {
            hi = std::max(hi, p->hi);
        } else {
            hi = 1.0;
        }
    }
    return hi;
}

Complex atom_at_zero(const Measure& mu) {
    for (const auto& a : mu.atoms()) {
        if (same_location(a.t, 0.0)) return a.w;
    }
    return 0.0;
}

Kernel to_kernel(const Measure& mu, std::size_t n) {
    if (!is_power_of_two(n)) throw InputError("grid size must be a power of two");
    const double dn = static_cast<double>(n);
    const double h = 1.0 / dn;
    std::vector<Complex> k(n);
    for (const auto& a : mu.atoms()) {
        if (!is_grid_aligned(a.t, n)) {
            throw InputError("atom at t=" + std::to_string(a.t) +
                             " is not on the grid; choose N so that t*N is an integer");
        }
        const auto m = static_cast<std::size_t>(std::llround(a.t * dn));
        k[m] += a.w;
    }
    for (const auto& piece : mu.pieces()) {
        if (const auto* p = std::get_if<PolynomialPiece>(&piece)) {
            const auto prim = p->density.antiderivative();
            const auto first = static_cast<std::size_t>(std::floor(p->lo * dn));
            for (std::size_t m = first; m < n; ++m) {
                const double a = std::max(static_cast<double>(m) * h, p->lo);
                const double b = std::min(static_cast<double>(m + 1) * h, p->hi);
                if (a >= p->hi) break;
                if (b > a) k[m] += prim(b) - prim(a);
            }
        } else {
            const auto& q = std::get<PowerLawPiece>(piece);
            const auto rl = riemann_liouville(RLSpec(q.z), n);
            for (std::size_t m = 0; m < n; ++m) k[m] += q.weight * rl.raw()[m];
        }
    }
    return Kernel(std::move(k));
}

}  // namespace truncon
