#include "cascade/esl_market.hpp"

#include "step_detail.hpp"

#include <cmath>

namespace cascade {

double default_alpha(const FinancialSystem& system) {
    Money total = 0;
    for (const BalanceSheet& b : system.banks) total += b.A;
    if (total <= 0)
        throw ConfigError("cannot derive market depth: total fixed assets are zero");
    return std::log(2.0) / total;
}

namespace {

StepRecord sd_core(CascadeState& st, const ModelConfig& cfg) {
    const std::size_t n = st.size();
    const FinancialSystem& nom = st.nominal_system();
    const ImpactParams& k = cfg.impact;
    const std::size_t first = st.fictitious_bank_present ? 1 : 0;

    const std::vector<double> q_old = st.q;
    StepRecord rec = detail::solvency_core(st, cfg, false);

    const double pi_t_old = st.market.pi_tilde;
    rec.pi_tilde_before = pi_t_old;

    double exponent = 0;
    Money restructured = 0;
    for (std::size_t i = first; i < n; ++i) {
        const Money r = (1.0 - rec.q_dot[i]) * q_old[i] * nom.banks[i].D;
        restructured += r;
        exponent += k.alpha_tilde * r +
                    k.beta_tilde * (st.debt_snapshot[i] - st.banks[i].X) +
                    k.beta_tilde_prime * (st.equity_snapshot[i] - st.banks[i].E);
    }
    const double pi_t_new = pi_t_old * std::exp(-exponent);

    // Confidence-driven withdrawals: paid from cash, in proportion to the
    // remaining external debt.
    for (std::size_t i = first; i < n; ++i) {
        const Money hit = (pi_t_old - pi_t_new) * st.q[i] * nom.banks[i].D;
        st.banks[i].C -= hit;
        st.banks[i].D -= hit;
        st.sigma[i] -= hit;
        st.cum_overdraft[i] = st.banks[i].C - st.sigma[i];
    }

    st.market.pi_tilde = pi_t_new;
    st.market.s_tilde += restructured;
    for (std::size_t i = first; i < n; ++i) {
        st.market.d_tilde += st.debt_snapshot[i] - st.banks[i].X;
        st.market.e_tilde += st.equity_snapshot[i] - st.banks[i].E;
        st.debt_snapshot[i] = st.banks[i].X;
        st.equity_snapshot[i] = st.banks[i].E;
    }

    rec.pi_tilde_after = pi_t_new;
    rec.debt_restructured = restructured;
    return rec;
}

StepRecord la_core(CascadeState& st, const ModelConfig& cfg,
                   const ExposureMatrix* repayment_base) {
    const std::size_t n = st.size();
    const FinancialSystem& nom = st.nominal_system();
    const ImpactParams& k = cfg.impact;
    const std::size_t first = st.fictitious_bank_present ? 1 : 0;

    const std::vector<double> qt_old = st.q_tilde;
    StepRecord rec = detail::liquidity_core(st, cfg, repayment_base);

    const double pi_old = st.market.pi;
    rec.pi_before = pi_old;

    double exponent = 0;
    Money sold = 0;
    for (std::size_t i = first; i < n; ++i) {
        const Money units = (1.0 - rec.q_tilde_dot[i]) * qt_old[i] * nom.banks[i].A;
        sold += units;
        exponent += k.alpha * units +
                    k.beta * (st.z_snapshot[i] - st.banks[i].Z) +
                    k.beta_prime * (st.c_snapshot[i] - st.banks[i].C);
    }
    const double pi_new = pi_old * std::exp(-exponent);

    // Mark the remaining holdings to the new price.
    for (std::size_t i = first; i < n; ++i) {
        const Money hit = (pi_old - pi_new) * st.q_tilde[i] * nom.banks[i].A;
        st.banks[i].A -= hit;
        st.banks[i].E -= hit;
        st.delta[i] -= hit;
        st.cum_neg_equity[i] = st.banks[i].E - st.delta[i];
    }

    st.market.pi = pi_new;
    st.market.s += sold;
    for (std::size_t i = first; i < n; ++i) {
        st.market.ell += st.banks[i].Z - st.z_snapshot[i];
        st.market.ell_prime += st.banks[i].C - st.c_snapshot[i];
        st.z_snapshot[i] = st.banks[i].Z;
        st.c_snapshot[i] = st.banks[i].C;
    }

    rec.pi_after = pi_new;
    rec.units_sold = sold;
    return rec;
}

StepRecord merge_day(const StepRecord& s_rec, const StepRecord& l_rec, int day,
                     bool s_first) {
    StepRecord rec;
    rec.day = day;
    rec.p_dot = s_rec.p_dot;
    rec.q_dot = s_rec.q_dot;
    rec.p_tilde_dot = l_rec.p_tilde_dot;
    rec.q_tilde_dot = l_rec.q_tilde_dot;
    rec.identity_residual_pre =
        s_first ? s_rec.identity_residual_pre : l_rec.identity_residual_pre;
    rec.identity_residual_post =
        s_first ? l_rec.identity_residual_post : s_rec.identity_residual_post;
    rec.writeoff_total = s_rec.writeoff_total;
    rec.pi_before = l_rec.pi_before;
    rec.pi_after = l_rec.pi_after;
    rec.pi_tilde_before = s_rec.pi_tilde_before;
    rec.pi_tilde_after = s_rec.pi_tilde_after;
    rec.units_sold = l_rec.units_sold;
    rec.debt_restructured = s_rec.debt_restructured;
    return rec;
}

}  // namespace

StepRecord sd_step(CascadeState& state, const ModelConfig& config) {
    return sd_core(state, config);
}

StepRecord la_step(CascadeState& state, const ModelConfig& config) {
    return la_core(state, config, nullptr);
}

CascadeTrajectory run_esl_cascade(const FinancialSystem& post_trigger,
                                  const ModelConfig& config) {
    config.threshold.validate();
    config.impact.validate();
    const std::size_t n = post_trigger.size();

    CascadeTrajectory tr;
    CascadeState st = CascadeState::initial(post_trigger);
    audit_state(st, config.audit_tol);
    tr.states.push_back(st);

    const int limit = config.solver.max_iter_for(n);
    for (int iter = 0; iter < limit; ++iter) {
        const CascadeState prev = st;
        StepRecord s_rec, l_rec;
        if (config.compose_s_after_l) {
            l_rec = la_core(st, config, nullptr);
            s_rec = sd_core(st, config);
        } else if (config.sigma_prefactor) {
            s_rec = sd_core(st, config);
            l_rec = la_core(st, config, nullptr);
        } else {
            const ExposureMatrix pre_restructuring = st.exposures;
            s_rec = sd_core(st, config);
            l_rec = la_core(st, config, &pre_restructuring);
        }
        tr.records.push_back(
            merge_day(s_rec, l_rec, st.day, !config.compose_s_after_l));
        st.day += 1;
        audit_state(st, config.audit_tol);
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
