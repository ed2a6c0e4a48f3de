#include "cascade/solvency.hpp"

#include "step_detail.hpp"

#include <algorithm>
#include <cmath>

namespace cascade {

std::vector<double> clearing_map(const std::vector<double>& p,
                                 const FinancialSystem& system) {
    const std::size_t n = system.size();
    if (p.size() != n)
        throw StructuralError("clearing vector size does not match system");
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const BalanceSheet& b = system.banks[i];
        if (b.X <= 0) continue;
        Money recovered = 0;
        for (std::size_t j = 0; j < n; ++j)
            recovered += system.exposures(j, i) * p[j];
        out[i] = std::clamp((b.A + b.C - b.D + recovered) / b.X, 0.0, 1.0);
    }
    return out;
}

namespace {

ClearingResult iterate_clearing(const FinancialSystem& system, double start,
                                double tol, int max_iter) {
    const std::size_t n = system.size();
    const int limit = max_iter > 0 ? max_iter : static_cast<int>(10 * n + 100);

    std::vector<double> p(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = system.banks[i].X > 0 ? start : 0.0;

    double resid = 0;
    for (int iter = 1; iter <= limit; ++iter) {
        std::vector<double> next = clearing_map(p, system);
        resid = 0;
        for (std::size_t i = 0; i < n; ++i)
            resid = std::max(resid, std::abs(next[i] - p[i]));
        p = std::move(next);
        if (resid < tol) {
            ClearingResult out;
            out.clearing.p = std::move(p);
            out.clearing.q.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const BalanceSheet& b = system.banks[i];
                if (b.D <= 0) continue;
                Money recovered = 0;
                for (std::size_t j = 0; j < n; ++j)
                    recovered += system.exposures(j, i) * out.clearing.p[j];
                out.clearing.q[i] =
                    std::clamp((b.A + b.C + recovered) / b.D, 0.0, 1.0);
            }
            out.iterations = iter;
            out.residual = resid;
            return out;
        }
    }
    throw ConvergenceError("clearing iteration did not converge", limit, resid, p);
}

}  // namespace

ClearingResult greatest_clearing_vector(const FinancialSystem& system, double tol,
                                        int max_iter) {
    return iterate_clearing(system, 1.0, tol, max_iter);
}

ClearingResult least_clearing_vector(const FinancialSystem& system, double tol,
                                     int max_iter) {
    return iterate_clearing(system, 0.0, tol, max_iter);
}

namespace detail {

StepRecord solvency_core(CascadeState& st, const ModelConfig& cfg,
                         bool buffer_targets) {
    const std::size_t n = st.size();
    const FinancialSystem& nom = st.nominal_system();
    const ThresholdKind hp = cfg.threshold.p_kind();
    const ThresholdKind hq = cfg.threshold.q_kind();

    StepRecord rec;
    rec.day = st.day;
    rec.identity_residual_pre = st.max_identity_residual();
    rec.p_dot.assign(n, 1.0);
    rec.q_dot.assign(n, 1.0);

    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 && st.fictitious_bank_present) continue;
        const BalanceSheet& b = st.banks[i];
        double pd = 1.0, qd = 1.0;
        if (buffer_targets) {
            const BalanceSheet& b0 = nom.banks[i];
            if (b0.X > 0) {
                const double target = eval_threshold(hp, st.delta[i] / b0.X);
                pd = st.p[i] > 0 ? std::clamp(target / st.p[i], 0.0, 1.0) : 1.0;
            }
            if (b0.D > 0) {
                const double target =
                    eval_threshold(hq, (st.delta[i] + b0.X) / b0.D);
                qd = st.q[i] > 0 ? std::clamp(target / st.q[i], 0.0, 1.0) : 1.0;
            }
        } else {
            if (b.X > 0) pd = eval_threshold(hp, b.E / b.X);
            if (b.D > 0) qd = eval_threshold(hq, (b.X + b.E) / b.D);
        }
        rec.p_dot[i] = pd;
        rec.q_dot[i] = qd;
    }

    std::vector<Money> z_old(n), e_old(n);
    for (std::size_t j = 0; j < n; ++j) {
        z_old[j] = st.banks[j].Z;
        e_old[j] = st.banks[j].E;
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (rec.p_dot[i] != 1.0) st.exposures.scale_row(i, rec.p_dot[i]);
        st.banks[i].X *= rec.p_dot[i];
        st.banks[i].D *= rec.q_dot[i];
        st.p[i] *= rec.p_dot[i];
        st.q[i] *= rec.q_dot[i];
    }

    for (std::size_t j = 0; j < n; ++j) {
        BalanceSheet& b = st.banks[j];
        b.Z = st.exposures.col_sum(j);
        b.E = std::max(e_old[j], 0.0) - (z_old[j] - b.Z);
        // The default buffer falls by exactly the new claim write-downs;
        // bail-in restorations of E never flow back into it.
        st.delta[j] -= z_old[j] - b.Z;
    }

    // Rebalance: write-downs beyond the creditor losses are bankruptcy
    // deadweight, destroyed first from A then from C.
    for (std::size_t j = 0; j < n; ++j) {
        BalanceSheet& b = st.banks[j];
        double resid = b.identity_residual();
        const double atol = cfg.audit_tol * b.identity_scale();
        if (resid > atol) {
            rec.writeoff_total += resid;
            const double from_a = std::min(resid, std::max(b.A, 0.0));
            b.A -= from_a;
            b.C -= resid - from_a;
        } else if (resid < -atol) {
            b.E += resid;
        }
    }

    for (std::size_t j = 0; j < n; ++j)
        st.cum_neg_equity[j] = st.banks[j].E - st.delta[j];

    rec.identity_residual_post = st.max_identity_residual();
    return rec;
}

double state_change(const CascadeState& before, const CascadeState& after) {
    double change = 0;
    for (std::size_t i = 0; i < before.size(); ++i) {
        change = std::max(change, std::abs(after.p[i] - before.p[i]));
        change = std::max(change, std::abs(after.q[i] - before.q[i]));
        change = std::max(change, std::abs(after.p_tilde[i] - before.p_tilde[i]));
        change = std::max(change, std::abs(after.q_tilde[i] - before.q_tilde[i]));
        const double scale = before.banks[i].identity_scale();
        change = std::max(change,
                          std::abs(after.banks[i].E - before.banks[i].E) / scale);
        change = std::max(change,
                          std::abs(after.banks[i].C - before.banks[i].C) / scale);
    }
    change = std::max(change, std::abs(after.market.pi - before.market.pi));
    change =
        std::max(change, std::abs(after.market.pi_tilde - before.market.pi_tilde));
    return change;
}

}  // namespace detail

StepRecord solvency_step(CascadeState& state, const ModelConfig& config,
                         bool buffer_targets) {
    StepRecord rec = detail::solvency_core(state, config, buffer_targets);
    state.day += 1;
    audit_state(state, config.audit_tol);
    return rec;
}

CascadeTrajectory run_en_cascade(const FinancialSystem& post_trigger,
                                 const ModelConfig& config) {
    config.threshold.validate();
    const bool buffer = config.threshold.variant != ThresholdVariant::soft;
    const std::size_t n = post_trigger.size();

    CascadeTrajectory tr;
    CascadeState st = CascadeState::initial(post_trigger);
    audit_state(st, config.audit_tol);
    tr.states.push_back(st);

    const int limit = config.solver.max_iter_for(n);
    for (int iter = 0; iter < limit; ++iter) {
        const CascadeState prev = st;
        tr.records.push_back(solvency_step(st, config, buffer));
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
