#include "cascade/sl_cascade.hpp"

#include "cascade/liquidity.hpp"
#include "cascade/solvency.hpp"

#include "helpers.hpp"

#include <doctest.h>

using namespace cascade;

namespace {

ModelConfig sl_config() {
    ModelConfig cfg;
    cfg.model = ModelKind::sl;
    cfg.solver.max_iter = 5000;
    return cfg;
}

}  // namespace

TEST_CASE("combined cascade converges to a joint fixed point") {
    for (std::uint64_t seed = 200; seed < 220; ++seed) {
        const FinancialSystem sys = testutil::random_mixed_post_trigger(seed, 10);
        const ModelConfig cfg = sl_config();
        const CascadeTrajectory tr = run_sl_cascade(sys, cfg);
        REQUIRE(tr.converged);

        CascadeState again = tr.terminal();
        solvency_step(again, cfg);
        CHECK(testutil::state_gap(again, tr.terminal()) < 1e-10);
        CascadeState again2 = tr.terminal();
        liquidity_step(again2, cfg);
        CHECK(testutil::state_gap(again2, tr.terminal()) < 1e-10);
    }
}

TEST_CASE("recoveries shrink and losses deepen monotonically") {
    for (std::uint64_t seed = 230; seed < 245; ++seed) {
        const FinancialSystem sys = testutil::random_mixed_post_trigger(seed, 10);
        const CascadeTrajectory tr = run_sl_cascade(sys, sl_config());
        REQUIRE(tr.converged);
        for (std::size_t d = 1; d < tr.states.size(); ++d) {
            const CascadeState& a = tr.states[d - 1];
            const CascadeState& b = tr.states[d];
            for (std::size_t i = 0; i < sys.size(); ++i) {
                CHECK(b.p[i] <= a.p[i] + 1e-12);
                CHECK(b.q[i] <= a.q[i] + 1e-12);
                CHECK(b.p_tilde[i] <= a.p_tilde[i] + 1e-12);
                CHECK(b.q_tilde[i] <= a.q_tilde[i] + 1e-12);
                CHECK(std::max(b.banks[i].E, 0.0) <=
                      std::max(a.banks[i].E, 0.0) + 1e-9);
                CHECK(std::max(b.banks[i].C, 0.0) <=
                      std::max(a.banks[i].C, 0.0) + 1e-9);
            }
        }
    }
}

TEST_CASE("a day's record merges both sub-steps") {
    const FinancialSystem sys = testutil::random_mixed_post_trigger(250, 8);
    CascadeState st = CascadeState::initial(sys);
    const StepRecord rec = sl_step(st, sl_config());
    CHECK(rec.day == 0);
    CHECK(st.day == 1);
    CHECK(rec.p_dot.size() == sys.size());
    CHECK(rec.p_tilde_dot.size() == sys.size());
    CHECK(rec.identity_residual_post < 1e-9);
}

TEST_CASE("pure sub-cascades are special cases of the combined day") {
    // No liquidity stress: the combined run must match the solvency run.
    const FinancialSystem sys = testutil::random_zero_cash_post_trigger(260, 8);
    FinancialSystem cash_rich = sys;
    for (auto& b : cash_rich.banks) {
        b.C += 1000.0;
        b.E += 1000.0;
    }
    ModelConfig en_cfg;
    en_cfg.model = ModelKind::en;
    en_cfg.solver.max_iter = 5000;
    const CascadeTrajectory en = run_en_cascade(cash_rich, en_cfg);
    const CascadeTrajectory sl = run_sl_cascade(cash_rich, sl_config());
    REQUIRE(en.converged);
    REQUIRE(sl.converged);
    CHECK(testutil::max_abs_diff(sl.terminal().p, en.terminal().p) < 1e-9);
    CHECK(testutil::max_abs_diff(sl.terminal().q, en.terminal().q) < 1e-9);
    for (std::size_t i = 0; i < sys.size(); ++i)
        CHECK(sl.terminal().banks[i].E ==
              doctest::Approx(en.terminal().banks[i].E).epsilon(1e-9));
}

TEST_CASE("alternate day orderings stay consistent") {
    for (std::uint64_t seed = 270; seed < 278; ++seed) {
        const FinancialSystem sys = testutil::random_mixed_post_trigger(seed, 8);
        SUBCASE("no same-day repricing of called loans") {
            ModelConfig cfg = sl_config();
            cfg.sigma_prefactor = false;
            const CascadeTrajectory tr = run_sl_cascade(sys, cfg);
            REQUIRE(tr.converged);
            for (const StepRecord& rec : tr.records)
                CHECK(rec.identity_residual_post < 1e-9);
            for (std::size_t i = 0; i < sys.size(); ++i) {
                CHECK(tr.terminal().p[i] >= -1e-12);
                CHECK(tr.terminal().q_tilde[i] <= 1.0 + 1e-12);
            }
        }
        SUBCASE("liquidity before solvency") {
            ModelConfig cfg = sl_config();
            cfg.compose_s_after_l = true;
            const CascadeTrajectory tr = run_sl_cascade(sys, cfg);
            REQUIRE(tr.converged);
            for (const StepRecord& rec : tr.records)
                CHECK(rec.identity_residual_post < 1e-9);
        }
    }
}
