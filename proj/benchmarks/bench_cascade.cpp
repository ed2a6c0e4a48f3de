#include "cascade/esl_market.hpp"
#include "cascade/scenarios.hpp"
#include "cascade/sl_cascade.hpp"
#include "cascade/solvency.hpp"

#include <benchmark/benchmark.h>

using namespace cascade;

namespace {

FinancialSystem stressed_system(std::size_t n) {
    NetworkSpec net;
    net.n_banks = n;
    net.p_edge = 0.1;
    net.seed = 99;
    const FinancialSystem sys = generate_system(net, BalanceSheetSpec{});
    TriggerSpec trig;
    trig.asset_shock_frac = 0.6;
    trig.withdrawal_frac = 0.3;
    trig.n_shocked = n / 10 + 1;
    return apply_trigger(sys, make_trigger(sys, trig, 7));
}

void bench_generate(benchmark::State& state) {
    NetworkSpec net;
    net.n_banks = static_cast<std::size_t>(state.range(0));
    net.p_edge = 0.1;
    net.seed = 3;
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_system(net, BalanceSheetSpec{}));
}

void bench_solvency_step(benchmark::State& state) {
    const FinancialSystem post = stressed_system(
        static_cast<std::size_t>(state.range(0)));
    const ModelConfig cfg = [] {
        ModelConfig c;
        c.model = ModelKind::en;
        return c;
    }();
    for (auto _ : state) {
        CascadeState st = CascadeState::initial(post);
        benchmark::DoNotOptimize(solvency_step(st, cfg));
    }
}

void bench_sl_run(benchmark::State& state) {
    const FinancialSystem post = stressed_system(
        static_cast<std::size_t>(state.range(0)));
    ModelConfig cfg;
    cfg.model = ModelKind::sl;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_sl_cascade(post, cfg));
}

void bench_esl_run(benchmark::State& state) {
    const FinancialSystem post = stressed_system(
        static_cast<std::size_t>(state.range(0)));
    ModelConfig cfg;
    cfg.model = ModelKind::esl;
    cfg.impact.alpha = default_alpha(post) * 0.5;
    cfg.impact.alpha_tilde = 1e-4;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_esl_cascade(post, cfg));
}

}  // namespace

BENCHMARK(bench_generate)->Arg(100)->Arg(1000);
BENCHMARK(bench_solvency_step)->Arg(100)->Arg(1000);
BENCHMARK(bench_sl_run)->Arg(100)->Arg(1000);
BENCHMARK(bench_esl_run)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
