#include <iostream>

#include "CLI11.hpp"

#include "truncon/cli.hpp"

int main(int argc, char** argv) {
    truncon::cli::RunConfig config;

    CLI::App app{"Truncated convolution operators on [0,1]: orbits, exponents, Fourier diagnostics, self-checks"};

    std::string command;
    app.add_option("command", command, "orbit | exponent | fourier | spectrum | irregular | verify")
        ->required()
        ->check(CLI::IsMember({"orbit", "exponent", "fourier", "spectrum", "irregular", "verify"}));
    app.add_option("--measure", config.measure_path, "measure JSON (default: delta + Lebesgue, i.e. I + V)");
    app.add_option("--f", config.f_path, "function spec JSON for the starting vector (default: f = 1)");
    app.add_option("--N", config.n, "grid size, a power of two")->capture_default_str();
    app.add_option("--n", config.n_max, "number of steps n_max")->capture_default_str();
    std::string norm_index = "1";
    app.add_option("--p", norm_index, "norm index: 1, 2 or inf")
        ->check(CLI::IsMember({"1", "2", "inf"}))
        ->capture_default_str();
    app.add_option("--out", config.out, "directory for the artifacts")->capture_default_str();
    app.add_option("--seed", config.seed, "seed for the randomized checks")->capture_default_str();
    app.add_option("--r", config.r, "exponent: order r")->capture_default_str();
    app.add_option("--b", config.b, "exponent: modulus b")->capture_default_str();
    app.add_option("--alpha", config.alpha, "exponent: argument alpha in [-pi, pi]")->capture_default_str();
    app.add_option("--s", config.s, "exponent: support start s (default: read off f)");
    app.add_option("--theta", config.theta, "fourier: ray angle in (-pi, pi], nonzero")->capture_default_str();
    app.add_option("--R", config.big_r, "fourier: outer radius, at least 50")->capture_default_str();
    app.add_option("--a-plus", config.a_plus_path, "irregular: polynomial density with free term +1");
    app.add_option("--a-minus", config.a_minus_path, "irregular: polynomial density with free term -1");
    app.add_option("--threads", config.threads, "verify: worker cap (default: TRUNCON_THREADS or all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : truncon::cli::kExitInput;
    }
    config.command = truncon::cli::parse_command(command);
    config.p = truncon::parse_norm_index(norm_index);
    return truncon::cli::run(config, std::cout, std::cerr);
}
