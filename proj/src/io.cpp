#include "truncon/io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace truncon::io {

namespace {

template <class F>
auto guarded(const char* what, F&& body) {
    try {
        return body();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

std::vector<Complex> complex_list(const json& j) {
    if (!j.is_array()) throw InputError("expected an array of numbers or [re, im] pairs");
    std::vector<Complex> out;
    for (const auto& v : j) out.push_back(complex_from_json(v));
    return out;
}

json complex_list_to_json(std::span<const Complex> values) {
    json arr = json::array();
    for (const auto& c : values) arr.push_back(complex_to_json(c));
    return arr;
}

void dump_into(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                dump_into(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i > 0) out += ',';
                dump_into(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            const double x = j.get<double>();
            // JSON has no infinity; emit null like the library does.
            out += std::isfinite(x) ? fmt::format("{:.17g}", x) : "null";
            break;
        }
        default: out += j.dump(); break;
    }
}

}  // namespace

Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw InputError("expected a number or a [re, im] pair, got " + j.dump());
}

json complex_to_json(Complex c) { return json::array({c.real(), c.imag()}); }

FunctionSpec function_spec_from_json(const json& j) {
    return guarded("function spec", [&] {
        const auto type = j.at("type").get<std::string>();
        if (type == "poly") return FunctionSpec::polynomial(complex_list(j.at("coeffs")));
        if (type == "power") return FunctionSpec::power(j.at("gamma").get<double>());
        if (type == "shift") {
            return FunctionSpec::shifted(j.at("t0").get<double>(), function_spec_from_json(j.at("inner")));
        }
        if (type == "samples") return FunctionSpec::samples(complex_list(j.at("values")));
        throw InputError("unknown function spec type '" + type + "'");
    });
}

json function_spec_to_json(const FunctionSpec& spec) {
    return std::visit(
        [](const auto& fn) -> json {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, PolynomialFn>) {
                return {{"type", "poly"}, {"coeffs", complex_list_to_json(fn.coeffs)}};
            } else if constexpr (std::is_same_v<T, PowerFn>) {
                return {{"type", "power"}, {"gamma", fn.gamma}};
            } else if constexpr (std::is_same_v<T, ShiftedFn>) {
                return {{"type", "shift"}, {"t0", fn.t0}, {"inner", function_spec_to_json(*fn.inner)}};
            } else {
                return {{"type", "samples"}, {"values", complex_list_to_json(fn.values)}};
            }
        },
        spec.variant);
}

Measure measure_from_json(const json& j) {
    return guarded("measure", [&] {
        std::vector<Atom> atoms;
        if (j.contains("atoms")) {
            for (const auto& a : j.at("atoms")) {
                atoms.push_back({a.at("t").get<double>(), a.contains("w") ? complex_from_json(a.at("w")) : 1.0});
            }
        }
        std::vector<MeasurePiece> pieces;
        if (j.contains("pieces")) {
            for (const auto& p : j.at("pieces")) {
                const auto type = p.at("type").get<std::string>();
                if (type == "poly") {
                    double lo = 0.0;
                    double hi = 1.0;
                    if (p.contains("on")) {
                        lo = p.at("on").at(0).get<double>();
                        hi = p.at("on").at(1).get<double>();
                    }
                    pieces.emplace_back(PolynomialPiece{Polynomial(complex_list(p.at("coeffs"))), lo, hi});
                } else if (type == "power") {
                    pieces.emplace_back(PowerLawPiece{complex_from_json(p.at("z")),
                                                      p.contains("w") ? complex_from_json(p.at("w")) : 1.0});
                } else {
                    throw InputError("unknown measure piece type '" + type + "'");
                }
            }
        }
        return Measure(std::move(atoms), std::move(pieces));
    });
}

json measure_to_json(const Measure& mu) {
    json atoms = json::array();
    for (const auto& a : mu.atoms()) atoms.push_back({{"t", a.t}, {"w", complex_to_json(a.w)}});
    json pieces = json::array();
    for (const auto& piece : mu.pieces()) {
        if (const auto* p = std::get_if<PolynomialPiece>(&piece)) {
            pieces.push_back({{"type", "poly"},
                              {"coeffs", complex_list_to_json(p->density.coeffs())},
                              {"on", json::array({p->lo, p->hi})}});
        } else {
            const auto& q = std::get<PowerLawPiece>(piece);
            pieces.push_back({{"type", "power"}, {"z", complex_to_json(q.z)}, {"w", complex_to_json(q.weight)}});
        }
    }
    return {{"atoms", atoms}, {"pieces", pieces}};
}

json kernel_to_json(const Kernel& k) {
    return {{"N", k.size()}, {"log_scale", k.log_scale()}, {"k", complex_list_to_json(k.raw())}};
}

Kernel kernel_from_json(const json& j) {
    return guarded("kernel", [&] {
        auto k = complex_list(j.at("k"));
        const auto n = j.at("N").get<std::size_t>();
        if (k.size() != n) throw InputError("kernel JSON: N does not match the length of k");
        return Kernel(std::move(k), j.value("log_scale", 0.0));
    });
}

std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return fmt::format("{:.17g}", x);
}

void write_trace_csv(std::ostream& out, const OrbitTrace& trace, const std::vector<double>& trend) {
    out << "n,log_norm,trend\n";
    for (std::size_t n = 0; n < trace.log_norms.size(); ++n) {
        out << n << ',' << format_number(trace.log_norms[n]) << ','
            << (n < trend.size() ? format_number(trend[n]) : std::string("nan")) << '\n';
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

std::string dump_json(const json& j) {
    std::string out;
    dump_into(j, out);
    out += '\n';
    return out;
}

}  // namespace truncon::io
