#pragma once

#include <vector>

#include "cascade/cascade_state.hpp"

namespace cascade {

/// Fractional recovery of interbank debt (p) and external debt (q) in the
/// crisis equilibrium. Convention: p_i = 0 when X0_i = 0, q_i = 0 when
/// D0_i = 0; solvency status is always read from E, never inferred from p.
struct ClearingVector {
    std::vector<double> p;
    std::vector<double> q;
};

struct ClearingResult {
    ClearingVector clearing;
    int iterations = 0;
    double residual = 0;  // sup-norm of p - F(p) at the returned point
};

/// One application of the clearing map F to p, on the post-trigger system.
/// Monotone nondecreasing in p.
std::vector<double> clearing_map(const std::vector<double>& p,
                                 const FinancialSystem& system);

/// Downward iteration from p = 1: the greatest fractional clearing vector.
ClearingResult greatest_clearing_vector(const FinancialSystem& system,
                                        double tol = 1e-12, int max_iter = 0);

/// Upward iteration from p = 0: the least fractional clearing vector.
ClearingResult least_clearing_vector(const FinancialSystem& system,
                                     double tol = 1e-12, int max_iter = 0);

/// One solvency step (restructure insolvent banks, revalue their debt,
/// mark creditors' interbank assets to market). Mutates the state and
/// advances its day. With non-soft thresholds the write-down residual is
/// booked against A (then C) so the identity is preserved.
///
/// `buffer_targets` drives the restructuring fractions from the default
/// buffers against nominal X0/D0 instead of current E/X. The two forms
/// coincide for the soft threshold; the buffer form is the faithful lift of
/// the variant-threshold recursions and is what run_en_cascade uses.
StepRecord solvency_step(CascadeState& state, const ModelConfig& config,
                         bool buffer_targets = false);

/// Iterates solvency steps to the crisis equilibrium. The terminal p
/// matches greatest_clearing_vector within the solver tolerance.
CascadeTrajectory run_en_cascade(const FinancialSystem& post_trigger,
                                 const ModelConfig& config);

}  // namespace cascade
