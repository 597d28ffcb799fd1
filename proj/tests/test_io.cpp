#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "truncon/io.hpp"
#include "truncon/measure.hpp"
#include "truncon/orbit.hpp"

using namespace truncon;
using io::json;

TEST(ComplexJson, AcceptsNumbersAndPairs) {
    EXPECT_EQ(io::complex_from_json(json(2.5)), Complex(2.5));
    EXPECT_EQ(io::complex_from_json(json::parse("[1, -2]")), Complex(1.0, -2.0));
    EXPECT_THROW(io::complex_from_json(json::parse("\"x\"")), InputError);
    EXPECT_THROW(io::complex_from_json(json::parse("[1, 2, 3]")), InputError);
}

TEST(FunctionSpecJson, RoundTrip) {
    const auto spec = FunctionSpec::shifted(0.25, FunctionSpec::polynomial({1.0, Complex(0, 2)}));
    const auto back = io::function_spec_from_json(io::function_spec_to_json(spec));
    const auto a = make_grid_function(spec, 64);
    const auto b = make_grid_function(back, 64);
    for (std::size_t i = 0; i < 64; ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(FunctionSpecJson, ParsesDocumentedForms) {
    const auto power = io::function_spec_from_json(json::parse(R"({"type":"power","gamma":0.5})"));
    EXPECT_DOUBLE_EQ(make_grid_function(power, 4)[3].real(), 1.0);
    const auto samples = io::function_spec_from_json(json::parse(R"({"type":"samples","values":[1,[0,1],2,3]})"));
    EXPECT_EQ(make_grid_function(samples, 4)[1], Complex(0, 1));
    EXPECT_THROW(io::function_spec_from_json(json::parse(R"({"type":"spline"})")), InputError);
    EXPECT_THROW(io::function_spec_from_json(json::parse(R"({"coeffs":[1]})")), InputError);
}

TEST(MeasureJson, RoundTrip) {
    const Measure mu = Measure::dirac(0.0, Complex(1, 1)) + Measure::dirac(0.5, -2.0) +
                       Measure::polynomial_density(Polynomial({1.0, 3.0}), 0.25, 0.75) +
                       Measure::power_law(Complex(0.5, 0.25), 2.0);
    const Measure back = io::measure_from_json(json::parse(io::dump_json(io::measure_to_json(mu))));
    EXPECT_LT(relative_distance(to_kernel(mu, 256), to_kernel(back, 256)), 1e-15);
}

TEST(MeasureJson, DefaultsAndErrors) {
    const Measure mu = io::measure_from_json(json::parse(R"({"atoms":[{"t":0.0,"w":1}],
        "pieces":[{"type":"poly","coeffs":[1]}, {"type":"power","z":[0.5,0]}]})"));
    EXPECT_EQ(mu.atoms().size(), 1u);
    EXPECT_EQ(mu.pieces().size(), 2u);
    EXPECT_THROW(io::measure_from_json(json::parse(R"({"atoms":[{"t":"a"}]})")), InputError);
    EXPECT_THROW(io::measure_from_json(json::parse(R"({"pieces":[{"type":"gauss"}]})")), InputError);
}

TEST(KernelJson, Format) {
    const Kernel k({1.0, Complex(0.5, -0.25)}, 0.0);
    const json j = io::kernel_to_json(Kernel({1.0, Complex(0.5, -0.25), 0.0, 0.0}, 0.0));
    EXPECT_EQ(j.at("N").get<int>(), 4);
    EXPECT_EQ(j.at("k")[1][1].get<double>(), -0.25);
    json bad = j;
    bad["N"] = 8;
    EXPECT_THROW(io::kernel_from_json(bad), InputError);
}

TEST(FormatNumber, Examples) {
    EXPECT_EQ(io::format_number(std::numeric_limits<double>::infinity()), "inf");
    EXPECT_EQ(io::format_number(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(std::stod(io::format_number(0.1)), 0.1);
    EXPECT_EQ(std::stod(io::format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(TraceCsv, HeaderAndRows) {
    OrbitTrace t;
    t.log_norms = {0.0, 1.5, -std::numeric_limits<double>::infinity()};
    std::ostringstream out;
    io::write_trace_csv(out, t, {0.0, 1.5, -std::numeric_limits<double>::infinity()});
    const std::string s = out.str();
    EXPECT_EQ(s.substr(0, s.find('\n')), "n,log_norm,trend");
    EXPECT_NE(s.find("2,-inf,-inf\n"), std::string::npos);
    EXPECT_EQ(s.find('\r'), std::string::npos);
}

TEST(Files, MissingAndMalformed) {
    const auto dir = std::filesystem::temp_directory_path() / "truncon_io_test";
    std::filesystem::create_directories(dir);
    EXPECT_THROW(io::read_json_file(dir / "missing.json"), InputError);
    io::write_text_file(dir / "bad.json", "{\"atoms\": [");
    EXPECT_THROW(io::read_json_file(dir / "bad.json"), InputError);
    io::write_text_file(dir / "good.json", "{\"a\": 1}");
    EXPECT_EQ(io::read_json_file(dir / "good.json").at("a").get<int>(), 1);
    std::filesystem::remove_all(dir);
}
