#pragma once

#include "cascade/cascade_state.hpp"
#include "cascade/financial_system.hpp"
#include "cascade/scenarios.hpp"
#include "cascade/thresholds.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace testutil {

using namespace cascade;

// Deterministic RNG independent of the library's generator, so tests do not
// inherit its bugs.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::size_t index(std::size_t n) { return next() % n; }
};

inline FinancialSystem make_system(std::vector<BalanceSheet> banks,
                                   std::vector<std::vector<Money>> rows) {
    FinancialSystem sys;
    sys.banks = std::move(banks);
    sys.exposures = ExposureMatrix(sys.banks.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            sys.exposures(i, j) = rows[i][j];
    return sys;
}

// Two banks, one loan: bank 0 owes bank 1 ten units but holds only five of
// external assets against no other debt; bank 1 carries three of deposits.
// Worked by hand: p = (0.5, 0), q = (0, 1), terminal equities (0, 2).
inline FinancialSystem two_bank_fixture() {
    return make_system(
        {
            BalanceSheet{0, 5, 0, 10, 0, -5},
            BalanceSheet{10, 0, 0, 0, 3, 7},
        },
        {{0, 10}, {0, 0}});
}

struct OracleStep {
    std::vector<double> p, q;
    std::vector<Money> delta;
};

// Direct day-by-day recursion for the solvency cascade, written against the
// nominal balance sheet only: p advances from the default buffer, the buffer
// from the creditors' shortfall under the new p. Independent of the
// stock-flow engine.
inline std::vector<OracleStep> solvency_oracle(const FinancialSystem& sys,
                                               const ThresholdSpec& th, int days) {
    const std::size_t n = sys.size();
    const ThresholdKind hp = th.p_kind();
    const ThresholdKind hq = th.q_kind();

    std::vector<OracleStep> steps;
    OracleStep s0;
    s0.p.assign(n, 0.0);
    s0.q.assign(n, 0.0);
    s0.delta.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        s0.p[i] = sys.banks[i].X > 0 ? 1.0 : 0.0;
        s0.q[i] = sys.banks[i].D > 0 ? 1.0 : 0.0;
        s0.delta[i] = sys.banks[i].E;
    }
    steps.push_back(s0);

    for (int d = 1; d <= days; ++d) {
        const OracleStep& prev = steps.back();
        OracleStep s;
        s.p.assign(n, 0.0);
        s.q.assign(n, 0.0);
        s.delta.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const BalanceSheet& b = sys.banks[i];
            if (b.X > 0) s.p[i] = eval_threshold(hp, prev.delta[i] / b.X);
            if (b.D > 0) s.q[i] = eval_threshold(hq, (prev.delta[i] + b.X) / b.D);
        }
        for (std::size_t i = 0; i < n; ++i) {
            Money shortfall = 0;
            for (std::size_t j = 0; j < n; ++j)
                shortfall += sys.exposures(j, i) * (1.0 - s.p[j]);
            s.delta[i] = sys.banks[i].E - shortfall;
        }
        steps.push_back(std::move(s));
    }
    return steps;
}

// Valid system with zero cash, shocked through fixed assets only, so the
// post-trigger state keeps C = 0 exactly.
inline FinancialSystem random_zero_cash_post_trigger(std::uint64_t seed,
                                                     std::size_t max_n) {
    Rng rng(seed);
    const std::size_t n = 2 + rng.index(max_n - 1);
    FinancialSystem sys;
    sys.banks.resize(n);
    sys.exposures = ExposureMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && rng.uniform() < 0.5)
                sys.exposures(i, j) = 1.0 + 9.0 * rng.uniform();

    for (std::size_t i = 0; i < n; ++i) {
        BalanceSheet& b = sys.banks[i];
        b.Z = sys.exposures.col_sum(i);
        b.X = sys.exposures.row_sum(i);
        const double total = std::max({1.3 * b.Z, b.X / 0.9 + 1.0, 10.0});
        b.C = 0;
        b.A = total - b.Z;
        const double assets = b.assets();
        b.D = (assets - 0.08 * assets) - b.X;
        if (b.D < 0) b.D = 0;
        b.E = assets - (b.X + b.D);
    }

    // Shock: wipe out more than the equity of roughly a third of the banks.
    TriggerShock shock = TriggerShock::none(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.uniform() > 0.4) continue;
        const BalanceSheet& b = sys.banks[i];
        shock.delta_A[i] =
            -std::min(b.A, b.E * (1.0 + 2.0 * rng.uniform()) + rng.uniform() * b.X);
    }
    return apply_trigger(sys, shock);
}

// Stressed system from the library generator: asset and withdrawal shocks on
// a few banks of a random Erdos-Renyi network.
inline FinancialSystem random_mixed_post_trigger(std::uint64_t seed, std::size_t max_n,
                                                 double asset_frac = 0.8,
                                                 double withdrawal_frac = 0.5) {
    Rng rng(seed);
    NetworkSpec net;
    net.n_banks = 3 + rng.index(max_n - 2);
    net.p_edge = 0.15 + 0.5 * rng.uniform();
    net.exposure_mean = 5.0 + 10.0 * rng.uniform();
    net.exposure_dispersion = rng.uniform();
    net.seed = seed * 2 + 1;
    BalanceSheetSpec bs;
    const FinancialSystem sys = generate_system(net, bs);

    TriggerSpec trig;
    trig.asset_shock_frac = asset_frac * rng.uniform();
    trig.withdrawal_frac = withdrawal_frac * rng.uniform();
    trig.n_shocked = 1 + rng.index(std::max<std::size_t>(net.n_banks / 3, 1));
    return apply_trigger(sys, make_trigger(sys, trig, seed * 3 + 7));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// Largest componentwise gap between two states of the same system, with the
// money entries measured relative to the balance-sheet scale.
inline double state_gap(const CascadeState& a, const CascadeState& b) {
    double worst = max_abs_diff(a.p, b.p);
    worst = std::max(worst, max_abs_diff(a.q, b.q));
    worst = std::max(worst, max_abs_diff(a.p_tilde, b.p_tilde));
    worst = std::max(worst, max_abs_diff(a.q_tilde, b.q_tilde));
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = a.banks[i].identity_scale();
        worst = std::max(worst, std::abs(a.banks[i].E - b.banks[i].E) / scale);
        worst = std::max(worst, std::abs(a.banks[i].C - b.banks[i].C) / scale);
    }
    worst = std::max(worst, std::abs(a.market.pi - b.market.pi));
    worst = std::max(worst, std::abs(a.market.pi_tilde - b.market.pi_tilde));
    return worst;
}

// Largest componentwise gap between a GL state and the AL-dual reading of an
// EN state (p <-> p~, q <-> q~, E <-> C, Z <-> X, A <-> D).
inline double dual_state_gap(const CascadeState& gl, const CascadeState& en) {
    double worst = max_abs_diff(gl.p_tilde, en.p);
    worst = std::max(worst, max_abs_diff(gl.q_tilde, en.q));
    worst = std::max(worst, max_abs_diff(gl.p, en.p_tilde));
    worst = std::max(worst, max_abs_diff(gl.q, en.q_tilde));
    for (std::size_t i = 0; i < gl.size(); ++i) {
        const BalanceSheet& g = gl.banks[i];
        const BalanceSheet& e = en.banks[i];
        const double scale = g.identity_scale();
        worst = std::max(worst, std::abs(g.C - e.E) / scale);
        worst = std::max(worst, std::abs(g.E - e.C) / scale);
        worst = std::max(worst, std::abs(g.Z - e.X) / scale);
        worst = std::max(worst, std::abs(g.A - e.D) / scale);
        worst = std::max(worst, std::abs(g.X - e.Z) / scale);
        worst = std::max(worst, std::abs(g.D - e.A) / scale);
    }
    return worst;
}

// Terminal price implied directly by the terminal state: the exponent
// telescopes over the run, so the path never has to be replayed.
inline double closed_form_pi(const FinancialSystem& nominal,
                             const CascadeState& terminal, const ImpactParams& k) {
    double exponent = 0;
    const std::size_t first = nominal.fictitious_bank_present ? 1 : 0;
    for (std::size_t i = first; i < nominal.size(); ++i) {
        const BalanceSheet& b0 = nominal.banks[i];
        const double qt0 = b0.A > 0 ? 1.0 : 0.0;
        exponent += k.alpha * (qt0 - terminal.q_tilde[i]) * b0.A +
                    k.beta * (b0.Z - terminal.banks[i].Z) +
                    k.beta_prime * (b0.C - terminal.banks[i].C);
    }
    return std::exp(-exponent);
}

inline double closed_form_pi_tilde(const FinancialSystem& nominal,
                                   const CascadeState& terminal,
                                   const ImpactParams& k) {
    double exponent = 0;
    const std::size_t first = nominal.fictitious_bank_present ? 1 : 0;
    for (std::size_t i = first; i < nominal.size(); ++i) {
        const BalanceSheet& b0 = nominal.banks[i];
        const double q0 = b0.D > 0 ? 1.0 : 0.0;
        exponent += k.alpha_tilde * (q0 - terminal.q[i]) * b0.D +
                    k.beta_tilde * (b0.X - terminal.banks[i].X) +
                    k.beta_tilde_prime * (b0.E - terminal.banks[i].E);
    }
    return std::exp(-exponent);
}

}  // namespace testutil
