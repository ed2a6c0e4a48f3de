#include "cascade/cascade_state.hpp"

#include <cmath>

namespace cascade {

CascadeState CascadeState::initial(const FinancialSystem& post_trigger) {
    const std::size_t n = post_trigger.size();
    CascadeState st;
    st.day = 0;
    st.banks = post_trigger.banks;
    st.exposures = post_trigger.exposures;
    st.nominal = std::make_shared<const FinancialSystem>(post_trigger);
    st.fictitious_bank_present = post_trigger.fictitious_bank_present;

    st.p.assign(n, 0.0);
    st.q.assign(n, 0.0);
    st.p_tilde.assign(n, 0.0);
    st.q_tilde.assign(n, 0.0);
    st.delta.assign(n, 0.0);
    st.sigma.assign(n, 0.0);
    st.cum_neg_equity.assign(n, 0.0);
    st.cum_overdraft.assign(n, 0.0);
    st.terminally_illiquid.assign(n, false);
    st.llr_residual.assign(n, 0.0);
    st.equity_snapshot.assign(n, 0.0);
    st.debt_snapshot.assign(n, 0.0);
    st.z_snapshot.assign(n, 0.0);
    st.c_snapshot.assign(n, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        const BalanceSheet& b = post_trigger.banks[i];
        st.p[i] = b.X > 0 ? 1.0 : 0.0;
        st.q[i] = b.D > 0 ? 1.0 : 0.0;
        st.p_tilde[i] = b.Z > 0 ? 1.0 : 0.0;
        st.q_tilde[i] = b.A > 0 ? 1.0 : 0.0;
        st.delta[i] = b.E;
        st.sigma[i] = b.C;
        st.equity_snapshot[i] = b.E;
        st.debt_snapshot[i] = b.X;
        st.z_snapshot[i] = b.Z;
        st.c_snapshot[i] = b.C;
    }
    return st;
}

double CascadeState::max_identity_residual() const {
    double worst = 0.0;
    for (const BalanceSheet& b : banks)
        worst = std::max(worst, std::abs(b.identity_residual()) / b.identity_scale());
    return worst;
}

void audit_state(const CascadeState& state, double tol) {
    const double worst = state.max_identity_residual();
    if (worst > tol)
        throw AuditError("accounting identity broken: relative residual " +
                         std::to_string(worst) + " on day " +
                         std::to_string(state.day));
}

}  // namespace cascade
