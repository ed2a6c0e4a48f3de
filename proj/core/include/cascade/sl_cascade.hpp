#pragma once

#include "cascade/cascade_state.hpp"

namespace cascade {

/// One combined day: the solvency step followed by the liquidity step
/// (the canonical order). The liquidity repayments naturally operate on
/// the post-solvency exposures, which realizes the same-day restructuring
/// prefactor in the cash update.
StepRecord sl_step(CascadeState& state, const ModelConfig& config);

/// Iterates combined days until the sup-norm change of
/// (p, p~, q, q~, E, C) drops below the solver tolerance. The terminal
/// state is a fixed point of both sub-steps separately.
CascadeTrajectory run_sl_cascade(const FinancialSystem& post_trigger,
                                 const ModelConfig& config);

}  // namespace cascade
