#pragma once

#include "cascade/cascade_state.hpp"

namespace cascade {

/// Market depth at which selling all fixed assets halves the price:
/// log 2 / sum_i A0_i. Throws ConfigError when total fixed assets are zero.
double default_alpha(const FinancialSystem& system);

/// Solvency step extended with the bank-panic channel: restructuring
/// losses shrink depositor confidence pi_tilde, and the induced
/// withdrawals hit every bank's cash in proportion to its external debt.
StepRecord sd_step(CascadeState& state, const ModelConfig& config);

/// Liquidity step extended with the fire-sale channel: fixed-asset sales
/// (and liquidity contraction, via beta/beta_prime) depress the common
/// price pi, and the mark-to-market loss hits every holder's equity.
StepRecord la_step(CascadeState& state, const ModelConfig& config);

/// Iterates la_step(sd_step(.)) to equilibrium. With all six impact
/// parameters zero this degenerates to run_sl_cascade.
CascadeTrajectory run_esl_cascade(const FinancialSystem& post_trigger,
                                  const ModelConfig& config);

}  // namespace cascade
