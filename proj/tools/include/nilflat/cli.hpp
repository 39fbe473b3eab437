#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilflat::cli {

enum ExitCode : int {
    kOk = 0,
    kIoOrParse = 1,
    kInvalidMath = 2,
    kBoundViolation = 3,
};

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::optional<std::string> metric;
    std::optional<std::string> tower;  // extend: rebuild from a whole tower file
    double t_max = 1.0;
    double t_min = 1e-6;
    std::size_t t_points = 7;
    std::size_t samples = 10000;
    double eps = 1e-2;
    std::uint64_t seed = 0;
    std::string out;     // empty: write to stdout text
    std::string format = "csv";
    unsigned threads = 1;
};

struct CommandResult {
    int exit_code = kOk;
    std::string output;      // primary artifact (file contents when --out is unset)
    std::string summary;     // JSON summary where the command has one
    std::string diagnostic;  // human-readable report or error
};

CommandResult cmd_validate(const std::string& path);
CommandResult cmd_peel(const std::string& path, const std::string& out);
CommandResult cmd_extend(const std::string& base_path, const std::string& cocycle_path, const std::string& out);
CommandResult cmd_extend_tower(const std::string& tower_path, const std::string& out);
CommandResult cmd_curvature(const RunConfig& config);
CommandResult cmd_certify(const RunConfig& config);

/// Dispatches on config.command.
CommandResult run(const RunConfig& config);

/// Parses argv (CLI11), runs, prints, and returns the exit code.
int main_entry(int argc, char** argv);

std::string version();

}  // namespace nilflat::cli
