#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"

#include "truncon/grid_space.hpp"
#include "truncon/kernel.hpp"
#include "truncon/measure.hpp"
#include "truncon/orbit.hpp"

namespace truncon::io {

using nlohmann::json;

// Accepts a bare number or a [re, im] pair.
Complex complex_from_json(const json& j);
json complex_to_json(Complex c);

// {"type":"poly","coeffs":[...]} | {"type":"power","gamma":g}
// | {"type":"shift","t0":t,"inner":{...}} | {"type":"samples","values":[[re,im],...]}
FunctionSpec function_spec_from_json(const json& j);
json function_spec_to_json(const FunctionSpec& spec);

// {"atoms":[{"t":0.0,"w":[1,0]}],
//  "pieces":[{"type":"poly","coeffs":[...],"on":[0,1]} | {"type":"power","z":[re,im]}]}
// Power pieces take an optional "w" weight (default 1).
Measure measure_from_json(const json& j);
json measure_to_json(const Measure& mu);

// {"N":..., "log_scale":..., "k":[[re,im],...]}
json kernel_to_json(const Kernel& k);
Kernel kernel_from_json(const json& j);

// 17 significant digits; infinities as "inf" / "-inf".
std::string format_number(double x);

// Header `n,log_norm,trend`, LF line endings.
void write_trace_csv(std::ostream& out, const OrbitTrace& trace, const std::vector<double>& trend);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

// JSON text with every floating value printed at 17 significant digits.
std::string dump_json(const json& j);

}  // namespace truncon::io
