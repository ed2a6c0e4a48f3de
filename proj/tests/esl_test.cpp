#include "cascade/esl_market.hpp"

#include "cascade/sl_cascade.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace cascade;

namespace {

ModelConfig esl_config(ImpactParams k = {}) {
    ModelConfig cfg;
    cfg.model = ModelKind::esl;
    cfg.impact = k;
    cfg.solver.max_iter = 5000;
    return cfg;
}

// A leveraged bank holding only fixed assets; the trigger wipes out the
// deposits and most of the asset book, leaving a deep overdraft that forces
// the survivor to liquidate everything.
FinancialSystem distressed_holder() {
    return testutil::make_system({BalanceSheet{0, 100, -950, 0, 0, -850}},
                                 {{0.0}});
}

}  // namespace

TEST_CASE("market depth defaults to the half-price point") {
    const FinancialSystem sys = testutil::random_mixed_post_trigger(300, 8);
    Money total = 0;
    for (const auto& b : sys.banks) total += b.A;
    CHECK(default_alpha(sys) == doctest::Approx(std::log(2.0) / total));

    FinancialSystem no_assets = testutil::two_bank_fixture();
    no_assets.banks[0].A = 0;
    no_assets.banks[0].E -= 5;
    CHECK_THROWS_AS(default_alpha(no_assets), ConfigError);
}

TEST_CASE("zero impact degenerates to the combined cascade exactly") {
    for (std::uint64_t seed = 310; seed < 320; ++seed) {
        const FinancialSystem sys = testutil::random_mixed_post_trigger(seed, 10);
        const CascadeTrajectory sl = run_sl_cascade(sys, [] {
            ModelConfig c;
            c.model = ModelKind::sl;
            c.solver.max_iter = 5000;
            return c;
        }());
        const CascadeTrajectory esl = run_esl_cascade(sys, esl_config());
        REQUIRE(sl.converged);
        REQUIRE(esl.converged);
        REQUIRE(sl.states.size() == esl.states.size());
        for (std::size_t d = 0; d < sl.states.size(); ++d)
            CHECK(testutil::state_gap(sl.states[d], esl.states[d]) <= 1e-12);
        CHECK(esl.terminal().market.pi == 1.0);
        CHECK(esl.terminal().market.pi_tilde == 1.0);
    }
}

TEST_CASE("liquidating the whole book at default depth halves the price") {
    const FinancialSystem sys = distressed_holder();
    ImpactParams k;
    k.alpha = default_alpha(sys);
    const CascadeTrajectory tr = run_esl_cascade(sys, esl_config(k));
    REQUIRE(tr.converged);
    CHECK(std::abs(tr.terminal().market.pi - 0.5) <= 1e-12);
    CHECK(tr.terminal().market.pi_tilde == 1.0);
    CHECK(tr.terminal().market.s == doctest::Approx(100.0));
    CHECK(tr.terminal().banks[0].A == doctest::Approx(0.0));
    CHECK(tr.terminal().banks[0].C == doctest::Approx(-850.0));
}

TEST_CASE("restructuring erodes depositor confidence and drains cash") {
    // One bank, four units short of solvency against fourteen of deposits.
    const FinancialSystem sys =
        testutil::make_system({BalanceSheet{0, 5, 5, 0, 14, -4}}, {{0.0}});
    ImpactParams k;
    k.alpha_tilde = 0.1;
    CascadeState st = CascadeState::initial(sys);
    const StepRecord rec = sd_step(st, esl_config(k));

    CHECK(rec.q_dot[0] == doctest::Approx(5.0 / 7.0));
    CHECK(rec.debt_restructured == doctest::Approx(4.0));
    const double pi_t = std::exp(-0.4);
    CHECK(st.market.pi_tilde == doctest::Approx(pi_t).epsilon(1e-14));
    // withdrawals leave D = pi~ q D0 and come straight out of cash
    CHECK(st.banks[0].D == doctest::Approx(10.0 * pi_t));
    CHECK(st.banks[0].C == doctest::Approx(5.0 - 10.0 * (1.0 - pi_t)));
    CHECK(st.max_identity_residual() < 1e-12);
}

TEST_CASE("terminal prices obey their closed forms") {
    for (std::uint64_t seed = 330; seed < 345; ++seed) {
        const FinancialSystem sys = testutil::random_mixed_post_trigger(seed, 10);
        testutil::Rng rng(seed + 7000);
        ImpactParams k;
        k.alpha = default_alpha(sys) * (0.5 + rng.uniform());
        k.beta = 1e-4 * rng.uniform();
        k.beta_prime = 1e-4 * rng.uniform();
        k.alpha_tilde = 1e-3 * rng.uniform();
        k.beta_tilde = 1e-4 * rng.uniform();
        k.beta_tilde_prime = 1e-4 * rng.uniform();
        const CascadeTrajectory tr = run_esl_cascade(sys, esl_config(k));
        REQUIRE(tr.converged);
        const CascadeState& last = tr.terminal();
        CHECK(std::abs(last.market.pi - testutil::closed_form_pi(sys, last, k)) <
              1e-9);
        CHECK(std::abs(last.market.pi_tilde -
                       testutil::closed_form_pi_tilde(sys, last, k)) < 1e-9);
        CHECK(last.market.pi <= 1.0 + 1e-15);
        CHECK(last.market.pi_tilde <= 1.0 + 1e-15);
    }
}

TEST_CASE("market feedback never improves an outcome") {
    for (std::uint64_t seed = 350; seed < 356; ++seed) {
        const FinancialSystem sys = testutil::random_mixed_post_trigger(seed, 8);
        ModelConfig plain;
        plain.model = ModelKind::sl;
        plain.solver.max_iter = 5000;
        const CascadeTrajectory sl = run_sl_cascade(sys, plain);
        ImpactParams k;
        k.alpha = default_alpha(sys);
        k.alpha_tilde = 1e-3;
        const CascadeTrajectory esl = run_esl_cascade(sys, esl_config(k));
        REQUIRE(sl.converged);
        REQUIRE(esl.converged);
        Money sl_equity = 0, esl_equity = 0;
        for (std::size_t i = 0; i < sys.size(); ++i) {
            sl_equity += std::max(sl.terminal().banks[i].E, 0.0);
            esl_equity += std::max(esl.terminal().banks[i].E, 0.0);
        }
        CHECK(esl_equity <= sl_equity + 1e-9);
    }
}
