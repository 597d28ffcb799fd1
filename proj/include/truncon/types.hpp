#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace truncon {

using Complex = std::complex<double>;

// Rejected input: malformed specs, broken preconditions, size mismatches.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A computation that cannot produce a finite answer (overflow, refused fit).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown by long-running loops when the caller requests a stop.
class Cancelled : public std::runtime_error {
public:
    Cancelled() : std::runtime_error("computation cancelled") {}
};

enum class NormIndex { One, Two, Inf };

NormIndex parse_norm_index(const std::string& text);
std::string to_string(NormIndex p);

}  // namespace truncon
