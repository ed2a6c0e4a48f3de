#include "cascade/sl_cascade.hpp"

#include "step_detail.hpp"

namespace cascade {

StepRecord sl_step(CascadeState& state, const ModelConfig& config) {
    StepRecord s_rec, l_rec;
    if (config.compose_s_after_l) {
        l_rec = detail::liquidity_core(state, config, nullptr);
        s_rec = detail::solvency_core(state, config, false);
    } else if (config.sigma_prefactor) {
        s_rec = detail::solvency_core(state, config, false);
        l_rec = detail::liquidity_core(state, config, nullptr);
    } else {
        const ExposureMatrix pre_restructuring = state.exposures;
        s_rec = detail::solvency_core(state, config, false);
        l_rec = detail::liquidity_core(state, config, &pre_restructuring);
    }

    StepRecord rec;
    rec.day = state.day;
    rec.p_dot = std::move(s_rec.p_dot);
    rec.q_dot = std::move(s_rec.q_dot);
    rec.p_tilde_dot = std::move(l_rec.p_tilde_dot);
    rec.q_tilde_dot = std::move(l_rec.q_tilde_dot);
    rec.identity_residual_pre = config.compose_s_after_l
                                    ? l_rec.identity_residual_pre
                                    : s_rec.identity_residual_pre;
    rec.identity_residual_post = config.compose_s_after_l
                                     ? s_rec.identity_residual_post
                                     : l_rec.identity_residual_post;
    rec.writeoff_total = s_rec.writeoff_total;

    state.day += 1;
    audit_state(state, config.audit_tol);
    return rec;
}

CascadeTrajectory run_sl_cascade(const FinancialSystem& post_trigger,
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
        tr.records.push_back(sl_step(st, config));
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
