#pragma once

#include "cascade/cascade_state.hpp"

// Day sub-steps shared by the single-channel and combined cascades. These
// mutate the state but do not advance the day counter; the public step
// functions and the combined-day drivers own the day bookkeeping.

namespace cascade::detail {

StepRecord solvency_core(CascadeState& state, const ModelConfig& config,
                         bool buffer_targets);

StepRecord liquidity_core(CascadeState& state, const ModelConfig& config,
                          const ExposureMatrix* repayment_base);

/// Sup-norm change of (p, q, p~, q~) plus scale-relative change of E and C.
double state_change(const CascadeState& before, const CascadeState& after);

}  // namespace cascade::detail
