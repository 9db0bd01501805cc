#pragma once
#include <iosfwd>
#include <string>
#include <vector>

// Command-line frontend.  run() takes the argument tokens (without the
// program name) and writes the report to `out`, diagnostics to `err`.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 malformed graph file.

namespace germcalc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_bad_graph_file = 3;

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace germcalc::cli
