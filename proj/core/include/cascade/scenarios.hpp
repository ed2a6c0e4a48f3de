#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cascade/cascade_state.hpp"
#include "cascade/financial_system.hpp"

namespace cascade {

enum class Topology { erdos_renyi, core_periphery };

/// Random-network specification. Exposure weights are lognormal with the
/// given mean and dispersion (sigma of log). Generation is deterministic in
/// (spec, seed) and each bank draws from its own stream, so growing N keeps
/// the existing banks' draws unchanged.
struct NetworkSpec {
    std::size_t n_banks = 10;
    Topology topology = Topology::erdos_renyi;
    double p_edge = 0.2;
    // core_periphery only:
    std::size_t n_core = 0;
    double p_cc = 0.8, p_cp = 0.3, p_pp = 0.05;
    double exposure_mean = 10.0;
    double exposure_dispersion = 0.5;
    std::uint64_t seed = 1;
};

struct BalanceSheetSpec {
    double capital_ratio = 0.08;     // E / total assets
    double cash_ratio = 0.12;        // C / total assets
    double fixed_asset_share = 0.6;  // A / (A + C)
};

/// Draws the exposure matrix per topology and completes the balance sheets
/// so every identity and nonnegativity constraint holds exactly.
/// Throws GenerationError naming the binding constraint when the ratios
/// are infeasible.
FinancialSystem generate_system(const NetworkSpec& net, const BalanceSheetSpec& bs);

/// Proportional random trigger: shocked banks lose asset_shock_frac of A
/// and withdrawal_frac of D. Bank selection is deterministic in the seed.
struct TriggerSpec {
    double asset_shock_frac = 0;
    double withdrawal_frac = 0;
    std::size_t n_shocked = 1;
};

TriggerShock make_trigger(const FinancialSystem& system, const TriggerSpec& spec,
                          std::uint64_t seed);

/// Per-run metrics extracted from a trajectory. Banks are counted
/// insolvent (illiquid) when their equity (cash) is negative at any
/// recorded state; the fictitious bank is never counted.
struct RunMetrics {
    int insolvent = 0;
    int illiquid = 0;
    int impaired = 0;
    Money equity_loss = 0;  // sum of E(day 0) - E(terminal)
    double final_pi = 1;
    double final_pi_tilde = 1;
    int days = 0;
    bool converged = true;
};

RunMetrics summarize(const CascadeTrajectory& trajectory);

struct GridCell {
    std::string name;
    NetworkSpec net;
    BalanceSheetSpec bs;
    TriggerSpec trigger;
    ModelConfig model;
};

struct CellSummary {
    std::string name;
    int n_runs = 0;
    int n_failed = 0;  // non-converged runs (recorded, never dropped)
    double mean_insolvent = 0, mean_illiquid = 0, mean_impaired = 0;
    double mean_equity_loss = 0, q05_equity_loss = 0, median_equity_loss = 0,
           q95_equity_loss = 0;
    double mean_final_pi = 1, mean_final_pi_tilde = 1;
    double mean_days = 0;
};

struct SummaryTable {
    std::vector<CellSummary> rows;
};

/// Runs every (cell, seed) pair; seeds are derived deterministically from
/// base_seed, and the aggregation is independent of execution order, so the
/// result does not depend on the worker count.
SummaryTable monte_carlo(const std::vector<GridCell>& grid, int n_seeds,
                         std::uint64_t base_seed = 1, int workers = 1);

}  // namespace cascade
