#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sdc/error.hpp"
#include "sdc/report.hpp"
#include "sdc/scenario.hpp"

namespace sdc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitIo = 4;

int exit_code(ErrorKind kind);

const std::vector<std::string>& subcommands();

struct RunOptions {
    std::string subcommand;
    std::filesystem::path config;
    std::filesystem::path out_dir;
    std::optional<std::int64_t> day;
    std::optional<std::uint64_t> units;
    std::optional<std::string> series;
    std::optional<std::filesystem::path> log;  // replay an existing log instead of the config events
};

/// Computes the report for a validated scenario. Throws the module errors.
Report build_report(const ScenarioConfig& config, const RunOptions& options);

/// Loads, validates, runs and writes. Diagnostics go to `err`, a one-line
/// summary per written file to `out`. Returns the exit status.
int run(const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace sdc::cli
