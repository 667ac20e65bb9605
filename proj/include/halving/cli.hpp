#pragma once

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace halving::cli {

enum ExitCode : int {
    kPass = 0,
    kFailed = 1,  // a verification failed, or bad usage
    kParseError = 2,
    kDegenerateInput = 3,
    kInadmissiblePath = 4,
    kEngineDisagreement = 5,
};

/// Human-readable lines followed by a machine-readable JSON block. Timing is
/// kept apart so that everything else is reproducible.
struct RunReport {
    std::string command;
    std::string input_digest;
    std::vector<std::string> lines;
    nlohmann::json results = nlohmann::json::object();
    std::vector<std::pair<std::string, double>> timing_ms;

    /// The JSON block without timing.
    nlohmann::json deterministic_json() const;
    std::string render() const;
};

/// Marker line between the text and JSON parts of a rendered report.
inline constexpr const char* kReportMarker = "--- report ---";

/// SHA-256 of `data`, lowercase hex.
std::string sha256_hex(const std::string& data);

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halving::cli
