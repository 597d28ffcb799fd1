#include "truncon/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace truncon {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Term {
    double t;
    Complex w;
};

double log_abs_sum(const std::vector<Term>& terms, Complex z) {
    // |w e^{-itz}| = |w| e^{t Im z}
    double top = kNegInf;
    for (const auto& term : terms) {
        if (term.w == Complex{}) continue;
        top = std::max(top, std::log(std::abs(term.w)) + term.t * z.imag());
    }
    if (top == kNegInf) return kNegInf;
    Complex acc{};
    for (const auto& term : terms) {
        if (term.w == Complex{}) continue;
        const double mag = std::log(std::abs(term.w)) + term.t * z.imag() - top;
        const Complex phase = term.w / std::abs(term.w) * std::polar(1.0, -term.t * z.real());
        acc += std::exp(mag) * phase;
    }
    const double a = std::abs(acc);
    return a == 0.0 ? kNegInf : top + std::log(a);
}

std::vector<Term> fourier_terms(const Measure& mu, std::size_t n) {
    std::vector<Term> terms;
    for (const auto& a : mu.atoms()) terms.push_back({a.t, a.w});
    if (!mu.pieces().empty()) {
        const Kernel cells = to_kernel(mu.density_part(), n);
        const double h = cells.step();
        for (std::size_t m = 0; m < n; ++m) {
            terms.push_back({static_cast<double>(m) * h, cells.raw()[m]});
        }
    }
    return terms;
}

void require_ray_angle(double theta) {
    if (!(theta > -std::numbers::pi && theta <= std::numbers::pi) || theta == 0.0) {
        throw InputError("ray angle must lie in (-pi, pi] and differ from 0");
    }
}

}  // namespace

double fourier_log_abs(const Measure& mu, Complex z, std::size_t n) {
    return log_abs_sum(fourier_terms(mu, n), z);
}

RaySample sample_ray(const Measure& mu, double theta, double r_lo, double r_hi, std::size_t count,
                     std::size_t n) {
    if (!(r_lo > 0.0 && r_lo < r_hi) || count < 2) {
        throw InputError("ray sampling needs 0 < r_lo < r_hi and at least two radii");
    }
    const auto terms = fourier_terms(mu, n);
    RaySample ray;
    ray.theta = theta;
    const double step = std::log(r_hi / r_lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const double r = (i + 1 == count) ? r_hi : r_lo * std::exp(step * static_cast<double>(i));
        ray.radii.push_back(r);
        ray.log_abs.push_back(log_abs_sum(terms, std::polar(r, theta)));
    }
    return ray;
}

double indicator_estimate(const Measure& mu, double theta, double big_r, std::size_t n) {
    require_ray_angle(theta);
    if (!(big_r >= 50.0)) throw InputError("indicator estimate needs R >= 50");
    const auto ray = sample_ray(mu, theta, 0.5 * big_r, big_r, kIndicatorRadii, n);
    double best = kNegInf;
    for (std::size_t i = 0; i < ray.radii.size(); ++i) {
        best = std::max(best, ray.log_abs[i] / ray.radii[i]);
    }
    return best;
}

double indicator_expected(const Measure& mu, double theta) {
    require_ray_angle(theta);
    const double s = std::sin(theta);
    return theta >= 0.0 ? sup_support_measure(mu) * s : inf_support_measure(mu) * s;
}

double ml_support_check(const std::vector<Measure>& mus, const std::vector<double>& cs, std::size_t n) {
    if (mus.empty() || mus.size() != cs.size()) {
        throw InputError("need one positive weight per measure");
    }
    bool some_atomless_at_zero = false;
    for (std::size_t j = 0; j < mus.size(); ++j) {
        if (!(cs[j] > 0.0)) throw InputError("weights must be positive");
        if (inf_support_measure(mus[j]) != 0.0) {
            throw InputError("every measure must have 0 as the infimum of its support");
        }
        if (atom_at_zero(mus[j]) == Complex{}) some_atomless_at_zero = true;
    }
    if (!some_atomless_at_zero) {
        throw InputError("some measure must carry no atom at 0, otherwise there is nothing to check");
    }
    std::vector<Kernel> kernels;
    std::vector<Kernel> derived;
    for (const auto& mu : mus) {
        kernels.push_back(to_kernel(mu, n));
        derived.push_back(to_kernel(derivative_measure(mu), n));
    }
    Kernel total = Kernel::zero(n);
    for (std::size_t j = 0; j < mus.size(); ++j) {
        Kernel nu_j = derived[j];
        for (std::size_t i = 0; i < mus.size(); ++i) {
            if (i != j) nu_j = compose(nu_j, kernels[i]);
        }
        total = total + nu_j.scaled(cs[j]);
    }
    // Structural support: cells below the Titchmarsh bound are exact zeros,
    // whereas a density vanishing like x^k at 0 has a first cell of order
    // h^{k+1}, far below any relative threshold once a few densities meet.
    return kernel_inf_support(total, 0.0);
}

Kernel sampled_density_kernel(const GridFunction& density) {
    const double h = density.step();
    std::vector<Complex> k(density.values().begin(), density.values().end());
    for (auto& v : k) v *= h;
    return Kernel(std::move(k));
}

TrcoPair trco_pair(const GridFunction& f, const GridFunction& g) {
    if (f.size() != g.size()) throw InputError("trco_pair: grid sizes differ");
    const double limit = 2.0 * f.step();
    if (inf_support(f) > limit || inf_support(g) > limit) {
        throw InputError("trco_pair needs both supports to start at 0 (first two nodes)");
    }
    return {sampled_density_kernel(g), sampled_density_kernel(f)};
}

double brbrb_residual(const GridFunction& f, Complex z) {
    if (!(z.real() > -1.0)) throw InputError("brbrb identity needs Re z > -1");
    if (inf_support(f) > 2.0 * f.step()) {
        throw InputError("brbrb identity needs the support of f to start at 0");
    }
    const std::size_t n = f.size();
    const Kernel c = sampled_density_kernel(f);
    const Kernel b = sampled_density_kernel(multiply_by_argument(f));
    const Kernel v = volterra(n);
    const GridFunction u = apply(riemann_liouville(RLSpec(z + 1.0), n), f);
    const GridFunction lhs = apply(c, multiply_by_argument(u)) - apply(b, u);
    const GridFunction rhs = apply(c, apply(v, u)).scaled(z + 1.0);
    const double scale = norm(rhs, NormIndex::Inf);
    if (scale == 0.0) throw NumericalError("brbrb right-hand side vanishes");
    return norm(lhs - rhs, NormIndex::Inf) / scale;
}

}  // namespace truncon
