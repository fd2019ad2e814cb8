#pragma once

#include "latchaos/cli/config.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace latchaos::cli {

struct CommandOptions {
    std::optional<double> phi;          // overrides system.phi (scan: restricts the phase list)
    std::optional<std::string> out_dir; // overrides output.directory
    bool check = false;                 // figures: evaluate the reproduction checks
    bool verbose = true;                // progress lines on stderr
};

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct CommandResult {
    std::filesystem::path directory;
    std::vector<CheckResult> checks;

    bool all_passed() const;
};

CommandResult cmd_adiabatic_scan(const RunConfig& config, const CommandOptions& options);
CommandResult cmd_quantum(const RunConfig& config, const CommandOptions& options);
CommandResult cmd_ensemble(const RunConfig& config, const CommandOptions& options);
CommandResult cmd_trajectory(const RunConfig& config, const CommandOptions& options);
CommandResult cmd_sensitivity(const RunConfig& config, const CommandOptions& options);
CommandResult cmd_lyapunov(const RunConfig& config, const CommandOptions& options);
/// Every experiment at each configured phase, the comparison figures and a
/// summary of derived metrics. With options.check the metrics are tested
/// against the reference thresholds.
CommandResult cmd_figures(const RunConfig& config, const CommandOptions& options);

/// "0.25pi"-style label used in file names.
std::string phase_tag(double phi);

/// Entry point of the latchaos executable; returns the process exit code.
int run(int argc, char** argv);

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int failure = 1;
inline constexpr int config = 2;
inline constexpr int numerical = 3;
inline constexpr int check = 4;
} // namespace exit_code

} // namespace latchaos::cli
