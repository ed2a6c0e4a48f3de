#include "cascade/liquidity.hpp"

#include "step_detail.hpp"

#include <algorithm>
#include <cmath>

namespace cascade {
namespace detail {

StepRecord liquidity_core(CascadeState& st, const ModelConfig& cfg,
                          const ExposureMatrix* repayment_base) {
    const std::size_t n = st.size();
    const ThresholdKind hp = cfg.threshold.p_kind();
    const ThresholdKind hq = cfg.threshold.q_kind();

    StepRecord rec;
    rec.day = st.day;
    rec.identity_residual_pre = st.max_identity_residual();
    rec.p_tilde_dot.assign(n, 1.0);
    rec.q_tilde_dot.assign(n, 1.0);

    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 && st.fictitious_bank_present) continue;
        const BalanceSheet& b = st.banks[i];
        if (b.Z > 0) rec.p_tilde_dot[i] = eval_threshold(hp, b.C / b.Z);
        if (b.A > 0) rec.q_tilde_dot[i] = eval_threshold(hq, (b.Z + b.C) / b.A);
    }

    // Cash calls: each stressed bank recalls a fraction of its interbank
    // loans and sells a fraction of its fixed assets.
    std::vector<Money> raised(n, 0.0), c_old(n);
    for (std::size_t i = 0; i < n; ++i) {
        const BalanceSheet& b = st.banks[i];
        c_old[i] = b.C;
        raised[i] = (1.0 - rec.p_tilde_dot[i]) * b.Z +
                    (1.0 - rec.q_tilde_dot[i]) * b.A;
    }

    // Debtors repay the recalled loans in cash before the columns shrink.
    std::vector<Money> rep_x(n, 0.0), rep_cash(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            rep_x[j] += (1.0 - rec.p_tilde_dot[i]) * st.exposures(j, i);
    if (repayment_base) {
        for (std::size_t j = 0; j < n; ++j) {
            Money r = 0;
            for (std::size_t i = 0; i < n; ++i)
                r += (1.0 - rec.p_tilde_dot[i]) * (*repayment_base)(j, i);
            // Anything beyond the live exposure is an early repayment of
            // external debt, capped by what is outstanding.
            const Money extra = std::min(r - rep_x[j], st.banks[j].D);
            st.banks[j].D -= extra;
            rep_cash[j] = rep_x[j] + extra;
        }
    } else {
        rep_cash = rep_x;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (rec.p_tilde_dot[i] != 1.0) st.exposures.scale_col(i, rec.p_tilde_dot[i]);
        BalanceSheet& b = st.banks[i];
        b.Z *= rec.p_tilde_dot[i];
        b.A *= rec.q_tilde_dot[i];
        st.p_tilde[i] *= rec.p_tilde_dot[i];
        st.q_tilde[i] *= rec.q_tilde_dot[i];
    }

    for (std::size_t j = 0; j < n; ++j) {
        BalanceSheet& b = st.banks[j];
        b.C = c_old[j] + raised[j] - rep_cash[j];
        b.X -= rep_x[j];
        // The liquidity buffer falls by exactly the repayments called from
        // this bank; overdraft funding never flows back into it.
        st.sigma[j] -= rep_x[j];
        st.cum_overdraft[j] = b.C - st.sigma[j];

        const double atol = cfg.audit_tol * b.identity_scale();
        st.terminally_illiquid[j] = b.C < -atol;
        st.llr_residual[j] = std::max(-b.C, 0.0);
    }

    rec.identity_residual_post = st.max_identity_residual();
    return rec;
}

}  // namespace detail

StepRecord liquidity_step(CascadeState& state, const ModelConfig& config,
                          const ExposureMatrix* repayment_base) {
    StepRecord rec = detail::liquidity_core(state, config, repayment_base);
    state.day += 1;
    audit_state(state, config.audit_tol);
    return rec;
}

CascadeTrajectory run_gl_cascade(const FinancialSystem& post_trigger,
                                 const ModelConfig& config) {
    config.threshold.validate();
    const std::size_t n = post_trigger.size();

    CascadeTrajectory tr;
    CascadeState st = CascadeState::initial(post_trigger);
    audit_state(st, config.audit_tol);
    tr.states.push_back(st);

    const int limit = config.solver.max_iter_for(n);
    for (int iter = 0; iter < limit; ++iter) {
        const CascadeState prev = st;
        tr.records.push_back(liquidity_step(st, config, nullptr));
        tr.states.push_back(st);
        tr.residual = detail::state_change(prev, st);
        if (tr.residual < config.solver.tol) {
            tr.converged = true;
            break;
        }
    }
    // The last recorded step of a converged run is the no-change
    // verification pass, not a day of activity.
    tr.days = static_cast<int>(tr.records.size()) - (tr.converged ? 1 : 0);
    return tr;
}

}  // namespace cascade
