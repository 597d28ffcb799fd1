#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "truncon/types.hpp"

namespace truncon::cli {

enum class Command { Orbit, Exponent, Fourier, Spectrum, Irregular, Verify };

Command parse_command(const std::string& text);
std::string to_string(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
    Command command = Command::Verify;
    std::size_t n = 1024;        // grid size N
    std::size_t n_max = 1000;
    NormIndex p = NormIndex::One;
    std::optional<std::filesystem::path> measure_path;  // symbol of T (default depends on the command)
    std::optional<std::filesystem::path> f_path;        // FunctionSpec of the starting vector
    std::filesystem::path out = ".";                    // artifact directory, created if missing
    std::uint64_t seed = 0;

    // exponent
    double r = 1.0;
    double b = 1.0;
    double alpha = 0.0;
    std::optional<double> s;  // defaults to the start of the support of f

    // fourier
    double theta = 1.5707963267948966;
    double big_r = 300.0;

    // irregular
    std::optional<std::filesystem::path> a_plus_path;
    std::optional<std::filesystem::path> a_minus_path;

    std::size_t threads = 0;  // verify; 0 defers to TRUNCON_THREADS, then the hardware
};

/**
 * Runs one command and writes its artifacts under config.out:
 *
 *   orbit      orbit.csv                  (n,log_norm,trend)
 *   exponent   exponent.json + orbit.csv
 *   fourier    ray.csv + indicator.json
 *   spectrum   spectrum.csv               (n,log_norm,per_step)
 *   irregular  grow.csv + shrink.csv
 *   verify     verify_report.txt, also echoed to `out`
 *
 * Returns 0 on success, 1 when a verify check fails, 2 on rejected input
 * and 3 on a numerical failure; the reason goes to `err`.
 */
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace truncon::cli
