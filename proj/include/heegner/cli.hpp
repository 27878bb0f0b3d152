#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace heegner::cli {

enum class Format { Json, Csv, Text };

struct RunConfig {
    unsigned bits = 256;
    std::int64_t qtrunc = 140;
    Format format = Format::Json;
    unsigned jobs = 1;
    /// Decimal string, e.g. "1e-20"; replaces the recognition tolerance.
    std::optional<std::string> tolerance;
};

/// Exit codes of run().
inline constexpr int exit_pass = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_usage = 2;

/// Parses argv-style arguments (without the program name), runs one subcommand
/// and writes its report to `out`; diagnostics and usage go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace heegner::cli
