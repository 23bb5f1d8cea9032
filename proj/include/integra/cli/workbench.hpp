#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "integra/exact/json_io.hpp"

namespace integra::cli {

inline constexpr const char* tool_version = "0.1.0";

enum ExitCode { Pass = 0, CheckFailed = 1, UsageError = 2 };

struct RunResult {
    int code = Pass;
    Json output;   // canonical result
    Json manifest; // written to the sidecar when a path is known
};

// Parses argv (without the program name), runs the subcommand, writes the JSON
// result to --json-out or `out`, and the manifest to --manifest or <json-out>.manifest.json.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Same, without touching the filesystem or streams; usage errors yield UsageError.
RunResult execute(const std::vector<std::string>& args, std::ostream& err);

// SHA-256 of the compact dump of `result` with every "wall_time" key removed.
std::string result_digest(const Json& result);

// "1.5", "-0.2+0.7i", "0.3-1i", "2i"
std::complex<double> parse_complex(const std::string& s);
std::vector<std::complex<double>> parse_complex_list(const std::string& s);

} // namespace integra::cli
