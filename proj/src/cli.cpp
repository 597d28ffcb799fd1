#include "truncon/cli.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ostream>
#include <sstream>

#include "truncon/analytic.hpp"
#include "truncon/io.hpp"
#include "truncon/measure.hpp"
#include "truncon/orbit.hpp"
#include "truncon/verify.hpp"

namespace truncon::cli {

namespace {

constexpr std::pair<Command, const char*> kNames[] = {
    {Command::Orbit, "orbit"},       {Command::Exponent, "exponent"},   {Command::Fourier, "fourier"},
    {Command::Spectrum, "spectrum"}, {Command::Irregular, "irregular"}, {Command::Verify, "verify"},
};

Measure load_measure(const RunConfig& c) {
    if (!c.measure_path) return Measure::dirac(0.0) + Measure::lebesgue();
    return io::measure_from_json(io::read_json_file(*c.measure_path));
}

FunctionSpec load_spec(const std::optional<std::filesystem::path>& path, FunctionSpec fallback) {
    if (!path) return fallback;
    return io::function_spec_from_json(io::read_json_file(*path));
}

GridFunction load_f(const RunConfig& c) {
    return make_grid_function(load_spec(c.f_path, FunctionSpec::polynomial({1.0})), c.n);
}

void emit(const RunConfig& c, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(c.out);
    io::write_text_file(c.out / name, text);
}

std::string trace_csv(const OrbitTrace& trace, double r) {
    const double q = 1.0 / (r + 1.0);
    std::vector<double> trend;
    trend.reserve(trace.log_norms.size());
    for (std::size_t k = 0; k < trace.log_norms.size(); ++k) {
        trend.push_back(trace.log_norms[k] / std::pow(static_cast<double>(std::max<std::size_t>(k, 1)), q));
    }
    std::ostringstream out;
    io::write_trace_csv(out, trace, trend);
    return out.str();
}

int run_orbit(const RunConfig& c, std::ostream& out) {
    const auto trace = iterate_orbit(to_kernel(load_measure(c), c.n), load_f(c), c.p, c.n_max);
    emit(c, "orbit.csv", trace_csv(trace, c.r));
    out << "orbit: final log-norm " << io::format_number(trace.log_norms.back()) << '\n';
    return kExitOk;
}

int run_exponent(const RunConfig& c, std::ostream& out) {
    const auto f = load_f(c);
    GrowthSpec spec{c.r, c.b, c.alpha, c.s.value_or(std::max(0.0, inf_support(f) - f.step()))};
    spec.validate();
    const auto trace = iterate_orbit(to_kernel(load_measure(c), c.n), f, c.p, c.n_max);
    const auto growth = growth_exponent(trace, c.r);
    const double prediction = theorem_a_prediction(spec);
    const double abs_error = std::abs(growth.estimate - prediction);
    const double rel_error = prediction != 0.0 ? abs_error / std::abs(prediction) : abs_error;
    const io::json report = {
        {"estimate", growth.estimate}, {"prediction", prediction},       {"rel_error", rel_error},
        {"N", c.n},                     {"n_max", c.n_max},               {"p", to_string(c.p)},
        {"r", spec.r},                  {"b", spec.b},                     {"alpha", spec.alpha},
        {"s", spec.s},                  {"trend_end", growth.trend.back()},
    };
    emit(c, "exponent.json", io::dump_json(report));
    emit(c, "orbit.csv", trace_csv(trace, c.r));
    out << fmt::format("exponent: estimate {} prediction {} rel_error {}\n", io::format_number(growth.estimate),
                       io::format_number(prediction), io::format_number(rel_error));
    return kExitOk;
}

int run_fourier(const RunConfig& c, std::ostream& out) {
    const Measure mu = load_measure(c);
    const auto ray = sample_ray(mu, c.theta, 0.5 * c.big_r, c.big_r, kIndicatorRadii, c.n);
    std::string csv = "theta,r,log_abs,ratio\n";
    for (std::size_t i = 0; i < ray.radii.size(); ++i) {
        csv += fmt::format("{},{},{},{}\n", io::format_number(c.theta), io::format_number(ray.radii[i]),
                           io::format_number(ray.log_abs[i]), io::format_number(ray.log_abs[i] / ray.radii[i]));
    }
    const double estimate = indicator_estimate(mu, c.theta, c.big_r, c.n);
    const double expected = indicator_expected(mu, c.theta);
    const io::json report = {{"theta", c.theta},
                             {"estimate", estimate},
                             {"expected", expected},
                             {"abs_error", std::abs(estimate - expected)}};
    emit(c, "ray.csv", csv);
    emit(c, "indicator.json", io::dump_json(report));
    out << fmt::format("fourier: estimate {} expected {}\n", io::format_number(estimate), io::format_number(expected));
    return kExitOk;
}

int run_spectrum(const RunConfig& c, std::ostream& out) {
    const Measure mu = load_measure(c);
    const Kernel s = to_kernel(mu, c.n) - Kernel::identity(c.n).scaled(atom_at_zero(mu));
    const auto trace = operator_norm_trace(s, c.n_max);
    std::string csv = "n,log_norm,per_step\n";
    for (std::size_t k = 1; k < trace.log_norms.size(); ++k) {
        const double v = trace.log_norms[k];
        csv += fmt::format("{},{},{}\n", k, io::format_number(v), io::format_number(v / static_cast<double>(k)));
    }
    emit(c, "spectrum.csv", csv);
    out << "spectrum: log-norm per step at n=" << c.n_max << ": "
        << io::format_number(trace.log_norms.back() / static_cast<double>(c.n_max)) << '\n';
    return kExitOk;
}

int run_irregular(const RunConfig& c, std::ostream& out) {
    const auto a_plus = load_spec(c.a_plus_path, FunctionSpec::polynomial({1.0}));
    const auto a_minus = load_spec(c.a_minus_path, FunctionSpec::polynomial({-1.0}));
    // Default starting vector V^3(1), which lies in the range of V.
    const GridFunction f = c.f_path ? load_f(c)
                                    : apply(power(volterra(c.n), 3),
                                            make_grid_function(FunctionSpec::polynomial({1.0}), c.n));
    const auto regimes = irregular_regimes(a_plus, a_minus, f, c.n_max);
    emit(c, "grow.csv", trace_csv(regimes.grow, c.r));
    emit(c, "shrink.csv", trace_csv(regimes.shrink, c.r));
    out << fmt::format("irregular: grow {} shrink {}\n",
                       io::format_number(regimes.grow.log_norms.back() - regimes.grow.log_norms.front()),
                       io::format_number(regimes.shrink.log_norms.back() - regimes.shrink.log_norms.front()));
    return kExitOk;
}

int run_verify(const RunConfig& c, std::ostream& out) {
    const std::size_t threads = c.threads != 0 ? c.threads : verify::thread_limit_from_env();
    const auto results = verify::run_checks(verify::all_checks(), c.seed, threads);
    const std::string report = verify::format_report(results);
    emit(c, "verify_report.txt", report);
    out << report;
    const bool all_passed = std::ranges::all_of(results, &verify::CheckResult::passed);
    return all_passed ? kExitOk : kExitCheckFailed;
}

}  // namespace

Command parse_command(const std::string& text) {
    for (const auto& [command, name] : kNames) {
        if (text == name) return command;
    }
    throw InputError("unknown command '" + text + "'");
}

std::string to_string(Command c) {
    for (const auto& [command, name] : kNames) {
        if (command == c) return name;
    }
    return "?";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const std::string name = to_string(config.command);
    try {
        if (config.n_max < 1) throw InputError("n_max must be at least 1");
        require_grid_size(config.n);
        switch (config.command) {
            case Command::Orbit: return run_orbit(config, out);
            case Command::Exponent: return run_exponent(config, out);
            case Command::Fourier: return run_fourier(config, out);
            case Command::Spectrum: return run_spectrum(config, out);
            case Command::Irregular: return run_irregular(config, out);
            case Command::Verify: return run_verify(config, out);
        }
    } catch (const InputError& e) {
        err << name << ": invalid input: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::filesystem::filesystem_error& e) {
        err << name << ": " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericalError& e) {
        err << name << ": numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Cancelled& e) {
        err << name << ": " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitInput;
}

}  // namespace truncon::cli
