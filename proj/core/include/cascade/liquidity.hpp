#pragma once

#include "cascade/cascade_state.hpp"

namespace cascade {

/// One liquidity step: illiquid banks recall interbank loans (and sell
/// fixed assets when those run out), debtors repay the called amounts.
/// Mutates the state and advances its day.
///
/// When `repayment_base` is non-null, called-debt repayments are computed
/// against that matrix instead of the current exposures (used by the
/// non-canonical no-prefactor mode of the combined cascade).
StepRecord liquidity_step(CascadeState& state, const ModelConfig& config,
                          const ExposureMatrix* repayment_base = nullptr);

/// Iterates liquidity steps to equilibrium. State-by-state, this is the
/// asset-liability dual of run_en_cascade.
CascadeTrajectory run_gl_cascade(const FinancialSystem& post_trigger,
                                 const ModelConfig& config);

}  // namespace cascade
