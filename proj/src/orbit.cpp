#include "truncon/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "truncon/measure.hpp"

namespace truncon {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kStopPollInterval = 32;

double raw_norm(std::span<const Complex> v, NormIndex p) {
    const double h = 1.0 / static_cast<double>(v.size());
    switch (p) {
        case NormIndex::One: {
            double s = 0.0;
            for (const auto& x : v) s += std::abs(x);
            return s * h;
        }
        case NormIndex::Two: {
            double s = 0.0;
            for (const auto& x : v) s += std::norm(x);
            return std::sqrt(s * h);
        }
        case NormIndex::Inf: {
            double m = 0.0;
            for (const auto& x : v) m = std::max(m, std::abs(x));
            return m;
        }
    }
    return 0.0;
}

void poll(std::stop_token& stop, std::size_t step) {
    if (step % kStopPollInterval == 0 && stop.stop_requested()) throw Cancelled();
}

Complex free_term(const FunctionSpec& a, const char* which) {
    const auto* poly = std::get_if<PolynomialFn>(&a.variant);
    if (!poly) throw InputError(std::string(which) + " must be a polynomial density");
    return poly->coeffs.empty() ? Complex{} : poly->coeffs.front();
}

}  // namespace

void GrowthSpec::validate() const {
    if (!(r > 0.0)) throw InputError("growth spec needs r > 0");
    if (!(b > 0.0)) throw InputError("growth spec needs b > 0");
    if (!(alpha >= -std::numbers::pi && alpha <= std::numbers::pi)) {
        throw InputError("growth spec needs alpha in [-pi, pi]");
    }
    if (!(s >= 0.0 && s < 1.0)) throw InputError("growth spec needs s in [0,1)");
}

OrbitTrace iterate_orbit(const Kernel& t, const GridFunction& f, NormIndex p, std::size_t n_max,
                         std::stop_token stop) {
    if (n_max < 1) throw InputError("orbit needs n_max >= 1");
    if (t.size() != f.size()) throw InputError("orbit: kernel and function sizes differ");
    const double f_norm = norm(f, p);
    if (f_norm == 0.0) throw InputError("orbit of the zero function is undefined");

    const KernelOperator op(t);
    OrbitTrace trace;
    trace.p = p;
    trace.log_norms.reserve(n_max + 1);
    trace.log_norms.push_back(std::log(f_norm));

    std::vector<Complex> state(f.values().begin(), f.values().end());
    for (auto& v : state) v /= f_norm;
    double lambda = trace.log_norms.front();
    bool dead = false;
    for (std::size_t n = 1; n <= n_max; ++n) {
        poll(stop, n);
        if (dead) {
            trace.log_norms.push_back(kNegInf);
            continue;
        }
        auto next = op.apply_unscaled(state);
        const double growth = raw_norm(next, p);
        if (growth == 0.0) {
            dead = true;
            std::fill(state.begin(), state.end(), Complex{});
            trace.log_norms.push_back(kNegInf);
            continue;
        }
        if (!std::isfinite(growth)) throw NumericalError("orbit iterate overflowed at step " + std::to_string(n));
        lambda += std::log(growth) + t.log_scale();
        for (auto& v : next) v /= growth;
        state = std::move(next);
        trace.log_norms.push_back(lambda);
    }
    trace.state = GridFunction(std::move(state));
    return trace;
}

OrbitTrace operator_norm_trace(const Kernel& t, std::size_t n_max, std::stop_token stop) {
    // The kernel of T^n is T^n applied to the unit impulse, and its column
    // sum is N times the discrete L^1 norm of that vector.
    std::vector<Complex> impulse(t.size());
    impulse[0] = 1.0;
    OrbitTrace trace = iterate_orbit(t, GridFunction(std::move(impulse)), NormIndex::One, n_max, stop);
    const double shift = std::log(static_cast<double>(t.size()));
    for (auto& lambda : trace.log_norms) lambda += shift;
    return trace;
}

double theorem_a_prediction(const GrowthSpec& g) {
    g.validate();
    const double q = 1.0 / (g.r + 1.0);
    const double cos_plus = std::max(std::cos(g.alpha * q), 0.0);
    return (g.r + 1.0) * std::pow(g.b, q) * std::pow((1.0 - g.s) / g.r, g.r * q) * cos_plus;
}

double theorem_a_norm_prediction(const GrowthSpec& g) {
    g.validate();
    const double q = 1.0 / (g.r + 1.0);
    const double cos_plus = std::max(std::cos(g.alpha * q), 0.0);
    return (g.r + 1.0) * std::pow(g.b, q) * cos_plus;
}

GrowthEstimate growth_exponent(const OrbitTrace& trace, double r) {
    if (!(r > 0.0)) throw InputError("growth exponent needs r > 0");
    const std::size_t n_max = trace.steps();
    if (n_max < 100) throw InputError("growth exponent needs a trace with n_max >= 100");
    const double q = 1.0 / (r + 1.0);
    GrowthEstimate out;
    out.trend.reserve(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        const double lambda = trace.log_norms[n];
        if (!std::isfinite(lambda)) {
            throw NumericalError("growth exponent refused: trace is not finite at n=" + std::to_string(n));
        }
        out.trend.push_back(lambda / std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), q));
    }
    out.estimate = 2.0 * out.trend[n_max] - out.trend[n_max / 2];
    return out;
}

DecayFit decay_floor_fit(const OrbitTrace& trace) {
    const std::size_t n_max = trace.steps();
    if (n_max < 4) throw InputError("decay fit needs at least 4 steps");
    const std::size_t first = std::max<std::size_t>(n_max / 2, 1);
    const double lambda0 = trace.log_norms.front();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t n = first; n <= n_max; ++n) {
        const double lambda = trace.log_norms[n];
        if (!std::isfinite(lambda)) throw NumericalError("decay fit refused: trace is not finite");
        if (n > first && lambda > trace.log_norms[n - 1]) {
            throw NumericalError("decay fit refused: trace increases at n=" + std::to_string(n));
        }
        const double drop = lambda0 - lambda;
        if (!(drop > 0.0)) {
            throw NumericalError("decay fit refused: trace has not dropped below its start at n=" +
                                 std::to_string(n));
        }
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(drop);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    const double cnt = static_cast<double>(count);
    const double denom = cnt * sxx - sx * sx;
    if (!(denom > 0.0)) throw NumericalError("decay fit refused: degenerate abscissae");
    DecayFit fit;
    fit.beta = (cnt * sxy - sx * sy) / denom;
    fit.c = std::exp((sy - fit.beta * sx) / cnt);
    fit.violates_floor = fit.beta > kDecayExponentCeiling;
    return fit;
}

Kernel identity_plus_density(const FunctionSpec& a, std::size_t n) {
    const auto* poly = std::get_if<PolynomialFn>(&a.variant);
    if (!poly) throw InputError("density for I + C_a must be a polynomial");
    const Measure mu = Measure::dirac(0.0) + Measure::polynomial_density(Polynomial(poly->coeffs));
    return to_kernel(mu, n);
}

IrregularRegimes irregular_regimes(const FunctionSpec& a_plus, const FunctionSpec& a_minus,
                                   const GridFunction& f, std::size_t n_max, std::stop_token stop) {
    if (free_term(a_plus, "a_plus") != Complex(1.0)) {
        throw InputError("a_plus must have free term +1 (growth branch)");
    }
    if (free_term(a_minus, "a_minus") != Complex(-1.0)) {
        throw InputError("a_minus must have free term -1 (decay branch)");
    }
    const std::size_t n = f.size();
    IrregularRegimes out{iterate_orbit(identity_plus_density(a_plus, n), f, NormIndex::One, n_max, stop),
                         iterate_orbit(identity_plus_density(a_minus, n), f, NormIndex::Inf, n_max, stop)};
    return out;
}

}  // namespace truncon
