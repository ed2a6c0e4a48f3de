#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cascade/io.hpp"
#include "cascade/scenarios.hpp"

namespace cascade {

enum class ExitCode : int {
    ok = 0,
    failure = 1,
    config_error = 2,
    validation_failure = 3,
    non_convergence = 4,
    incompatible_runs = 5,
};

struct OutputPaths {
    std::string trajectory_csv;
    std::string market_csv;
    std::string summary_json;
    std::string audit_jsonl;
    std::string mc_summary_csv;
};

/// Where the run's system comes from: exactly one of these is set.
struct SystemSource {
    std::optional<nlohmann::json> inline_system;
    std::string file_path;
    std::optional<NetworkSpec> generator_net;
    std::optional<BalanceSheetSpec> generator_bs;
};

struct RunConfig {
    ModelConfig model;
    SystemSource source;
    // Trigger: explicit per-bank vectors, or a proportional spec.
    std::optional<TriggerShock> trigger;
    std::optional<TriggerSpec> trigger_spec;
    OutputPaths outputs;
    std::uint64_t seed = 1;
    bool impact_alpha_default = false;  // alpha = "default" in the config
    std::optional<std::vector<GridCell>> monte_carlo_grid;
    int monte_carlo_seeds = 1;
};

/// Strict parser: unknown keys are errors. Throws ConfigError.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

struct RunResult {
    CascadeTrajectory trajectory;
    FinancialSystem post_trigger;
    RunMetrics metrics;
    nlohmann::json summary;
};

/// Resolves the system, applies the trigger and runs the configured model.
/// Does not touch the filesystem.
RunResult execute_run(const RunConfig& config);

// CLI entry points. Each catches domain errors, emits a structured JSON
// error object on stderr and returns the matching exit code.
int run_command(const std::string& config_path);
int compare_command(const std::string& config_a, const std::string& config_b,
                    const std::string& out_csv);
int validate_command(const std::string& system_path);
int generate_command(const std::string& spec_path, const std::string& out_path);

}  // namespace cascade
