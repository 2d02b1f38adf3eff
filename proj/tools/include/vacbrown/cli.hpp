#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vacbrown::cli {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_singular = 2;
inline constexpr int exit_usage = 64;
inline constexpr int exit_bad_data = 65;
inline constexpr int exit_io = 66;

using EnvLookup = std::function<std::optional<std::string>(std::string_view)>;

// Reads the process environment.
EnvLookup process_environment();

// args excludes the program name. Output is written only to out and err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env = process_environment());

}  // namespace vacbrown::cli
