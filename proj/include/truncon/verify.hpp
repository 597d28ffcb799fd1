#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace truncon::verify {

struct CheckResult {
    std::string id;
    bool passed = false;
    std::string detail;
};

struct Check {
    std::string id;           // "<module>/<property>", the sort key of the report
    std::string description;
    // Receives a seed derived from the suite seed and the check id, so a
    // check's random draws do not depend on scheduling.
    std::function<CheckResult(std::uint64_t seed)> run;
};

// Every invariant and property check, sorted by id.
std::vector<Check> all_checks();

// Runs the checks on up to `threads` workers (0 means one per hardware
// thread). Exceptions inside a check become failures. Results are sorted by id.
std::vector<CheckResult> run_checks(const std::vector<Check>& checks, std::uint64_t seed,
                                    std::size_t threads);

// TRUNCON_THREADS if set to a positive integer, else 0.
std::size_t thread_limit_from_env();

// One line per check ("PASS <id>: <detail>") followed by a summary line.
std::string format_report(const std::vector<CheckResult>& results);

}  // namespace truncon::verify
