#pragma once

#include <cstddef>
#include <string>

#include "cascade/thresholds.hpp"

namespace cascade {

enum class ModelKind { en, gl, sl, esl };

std::string to_string(ModelKind m);

/// The threshold configuration of a run. R1 governs the interbank (p-side)
/// recursion, R2 the external-debt (q-side) recursion. zero_recovery and
/// freeze modify the p-side only; the q-side stays soft for those variants.
struct ThresholdSpec {
    ThresholdVariant variant = ThresholdVariant::soft;
    double r1 = 0.4;
    double r2 = 0.4;
    double lambda = 0.5;

    ThresholdKind p_kind() const;
    ThresholdKind q_kind() const;
    void validate() const;
};

/// Market impact parameters of the indirect channels. alpha/beta/beta_prime
/// drive the fire-sale price, the tilde parameters drive depositor
/// confidence. All zero turns both channels off.
struct ImpactParams {
    double alpha = 0;
    double beta = 0;
    double beta_prime = 0;
    double alpha_tilde = 0;
    double beta_tilde = 0;
    double beta_tilde_prime = 0;

    void validate() const;
    bool all_zero() const;
};

struct SolverParams {
    double tol = 1e-12;
    int max_iter = 0;  // 0 means the default 10*N + 100

    int max_iter_for(std::size_t n) const {
        return max_iter > 0 ? max_iter : static_cast<int>(10 * n + 100);
    }
};

struct ModelConfig {
    ModelKind model = ModelKind::sl;
    ThresholdSpec threshold;
    ImpactParams impact;
    SolverParams solver;
    /// Scale the liquidity-step cash repayments by the debtor's same-day
    /// debt restructuring fraction (the canonical form). Disabling this is
    /// a non-canonical sensitivity mode.
    bool sigma_prefactor = true;
    /// Apply the liquidation step before the solvency step each day.
    /// Non-canonical; for sensitivity experiments only.
    bool compose_s_after_l = false;
    /// Audit tolerance for the per-state accounting identity.
    double audit_tol = 1e-9;
};

}  // namespace cascade
