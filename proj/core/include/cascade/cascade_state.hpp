#pragma once

#include <memory>
#include <vector>

#include "cascade/financial_system.hpp"
#include "cascade/model_config.hpp"

namespace cascade {

/// Scalar market state of the indirect channels. pi is the common
/// fixed-asset price, pi_tilde the fraction of external deposits not yet
/// withdrawn; both start at 1 and never increase. The remaining fields are
/// cumulative flow accumulators.
struct MarketState {
    double pi = 1.0;
    double pi_tilde = 1.0;
    Money s = 0;        // cumulative fixed-asset units sold
    Money ell = 0;      // cumulative interbank liquidity change (<= 0 in crisis)
    Money ell_prime = 0;  // cumulative cash change (<= 0 in crisis)
    Money s_tilde = 0;  // cumulative restructured external debt
    Money d_tilde = 0;  // cumulative interbank debt lost
    Money e_tilde = 0;  // cumulative equity lost
};

/// Full system state at a day boundary, plus the running ledgers the
/// recursions need. `nominal` is the day-0 (post-trigger) reference system.
struct CascadeState {
    int day = 0;
    std::vector<BalanceSheet> banks;
    ExposureMatrix exposures;

    std::vector<double> p, q;              // recovery fractions (products of sub-step dots)
    std::vector<double> p_tilde, q_tilde;  // unsold fractions

    std::vector<Money> delta;              // default buffers
    std::vector<Money> sigma;              // liquidity buffers
    std::vector<Money> cum_neg_equity;     // sum of (E^(m))^- over past days
    std::vector<Money> cum_overdraft;      // sum of (C^(m))^- over past days

    std::vector<bool> terminally_illiquid;
    std::vector<Money> llr_residual;       // unpaid overdraft of terminally illiquid banks

    MarketState market;
    // Snapshots used by the market-impact recursions (see esl_market).
    std::vector<Money> equity_snapshot;    // post-solvency-step equity of the previous day
    std::vector<Money> debt_snapshot;      // post-solvency-step X of the previous day
    std::vector<Money> z_snapshot;         // day-end Z of the previous day
    std::vector<Money> c_snapshot;         // day-end C of the previous day

    std::shared_ptr<const FinancialSystem> nominal;
    bool fictitious_bank_present = false;

    std::size_t size() const { return banks.size(); }
    const FinancialSystem& nominal_system() const { return *nominal; }

    /// Day-0 state: p = 1(X0>0), q = 1(D0>0), p~ = 1(Z0>0), q~ = 1(A0>0),
    /// buffers equal to E0 and C0.
    static CascadeState initial(const FinancialSystem& post_trigger);

    /// Largest relative identity residual over banks.
    double max_identity_residual() const;
};

/// Audit record of one day's sub-steps.
struct StepRecord {
    int day = 0;
    std::vector<double> p_dot, q_dot;
    std::vector<double> p_tilde_dot, q_tilde_dot;
    double identity_residual_pre = 0;
    double identity_residual_post = 0;
    Money writeoff_total = 0;  // deadweight booked under non-soft thresholds
    // Market increments (zero when the indirect channels are off).
    double pi_before = 1, pi_after = 1;
    double pi_tilde_before = 1, pi_tilde_after = 1;
    Money units_sold = 0;
    Money debt_restructured = 0;
};

struct CascadeTrajectory {
    std::vector<CascadeState> states;   // states[0] is day 0
    std::vector<StepRecord> records;    // records[n] maps states[n] -> states[n+1]
    bool converged = false;
    int days = 0;
    double residual = 0;

    const CascadeState& terminal() const { return states.back(); }
};

/// Throws AuditError when any bank's identity residual exceeds tol.
void audit_state(const CascadeState& state, double tol);

}  // namespace cascade
