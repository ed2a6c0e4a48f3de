#include "cascade/scenarios.hpp"

#include "cascade/esl_market.hpp"
#include "cascade/liquidity.hpp"
#include "cascade/sl_cascade.hpp"
#include "cascade/solvency.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

namespace cascade {

namespace {

// splitmix64: tiny, seedable, and stable across platforms, which keeps
// generated scenarios byte-identical everywhere.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() {  // in [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double normal() {  // Box-Muller, one draw per call
        double u1 = uniform();
        while (u1 <= 0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }
};

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    SplitMix64 g(a ^ (0x6a09e667f3bcc909ULL + b));
    return g.next();
}

bool edge_present(const NetworkSpec& net, std::size_t i, std::size_t j, double u) {
    if (net.topology == Topology::erdos_renyi) return u < net.p_edge;
    const bool ci = i < net.n_core, cj = j < net.n_core;
    const double p = ci && cj ? net.p_cc : (ci || cj ? net.p_cp : net.p_pp);
    return u < p;
}

CascadeTrajectory run_model(const FinancialSystem& post_trigger,
                            const ModelConfig& config) {
    switch (config.model) {
        case ModelKind::en: return run_en_cascade(post_trigger, config);
        case ModelKind::gl: return run_gl_cascade(post_trigger, config);
        case ModelKind::sl: return run_sl_cascade(post_trigger, config);
        case ModelKind::esl: return run_esl_cascade(post_trigger, config);
    }
    throw ConfigError("unknown model kind");
}

}  // namespace

FinancialSystem generate_system(const NetworkSpec& net, const BalanceSheetSpec& bs) {
    const std::size_t n = net.n_banks;
    if (n == 0) throw GenerationError("network must have at least one bank");
    if (net.topology == Topology::core_periphery && net.n_core > n)
        throw GenerationError("core size exceeds bank count");
    if (!(net.exposure_mean > 0))
        throw GenerationError("exposure mean must be positive");
    if (!(net.exposure_dispersion >= 0))
        throw GenerationError("exposure dispersion must be nonnegative");

    if (!(bs.capital_ratio >= 0 && bs.capital_ratio < 1))
        throw GenerationError("capital ratio must lie in [0,1)");
    if (!(bs.cash_ratio > 0 && bs.cash_ratio < 1))
        throw GenerationError("cash ratio must lie in (0,1)");
    if (!(bs.fixed_asset_share >= 0 && bs.fixed_asset_share < 1))
        throw GenerationError("fixed-asset share must lie in [0,1)");
    const double external_share = 1.0 - bs.cash_ratio / (1.0 - bs.fixed_asset_share);
    if (!(external_share > 0))
        throw GenerationError(
            "cash ratio / (1 - fixed-asset share) must stay below 1: interbank "
            "assets would be crowded out");

    FinancialSystem sys;
    sys.banks.resize(n);
    sys.exposures = ExposureMatrix(n);

    const double sigma = net.exposure_dispersion;
    const double mu = std::log(net.exposure_mean) - 0.5 * sigma * sigma;
    for (std::size_t i = 0; i < n; ++i) {
        SplitMix64 row(mix(net.seed, 0x100 + i));
        for (std::size_t j = 0; j < n; ++j) {
            const double u = row.uniform();
            const double g = row.normal();
            if (i == j || !edge_present(net, i, j, u)) continue;
            sys.exposures(i, j) = std::exp(mu + sigma * g);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        BalanceSheet& b = sys.banks[i];
        b.Z = sys.exposures.col_sum(i);
        b.X = sys.exposures.row_sum(i);
        double total = b.Z / external_share;
        total = std::max(total, b.X / (1.0 - bs.capital_ratio) * (1.0 + 1e-12));
        total = std::max(total, net.exposure_mean);  // isolated banks still trade
        b.C = bs.cash_ratio * total;
        b.A = total - b.Z - b.C;
        // Close the liabilities against the assets actually booked, so the
        // identity holds to the last bit, not just to rounding.
        const double assets = b.assets();
        b.D = (assets - bs.capital_ratio * assets) - b.X;
        if (b.D < 0) b.D = 0;
        b.E = assets - (b.X + b.D);
        if (b.A < 0 || b.D < 0 || b.E < 0)
            throw GenerationError("balance-sheet completion went negative at bank " +
                                  std::to_string(i));
    }
    return sys;
}

TriggerShock make_trigger(const FinancialSystem& system, const TriggerSpec& spec,
                          std::uint64_t seed) {
    const std::size_t n = system.size();
    if (!(spec.asset_shock_frac >= 0 && spec.asset_shock_frac <= 1))
        throw ConfigError("asset shock fraction must lie in [0,1]");
    if (!(spec.withdrawal_frac >= 0 && spec.withdrawal_frac <= 1))
        throw ConfigError("withdrawal fraction must lie in [0,1]");
    if (spec.n_shocked > n)
        throw ConfigError("cannot shock more banks than exist");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    SplitMix64 g(mix(seed, 0x7471ULL));
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[g.next() % i]);

    TriggerShock shock = TriggerShock::none(n);
    std::size_t picked = 0;
    for (std::size_t idx : order) {
        if (picked == spec.n_shocked) break;
        if (idx == 0 && system.fictitious_bank_present) continue;
        shock.delta_A[idx] = -spec.asset_shock_frac * system.banks[idx].A;
        shock.delta_D[idx] = -spec.withdrawal_frac * system.banks[idx].D;
        ++picked;
    }
    return shock;
}

RunMetrics summarize(const CascadeTrajectory& trajectory) {
    RunMetrics m;
    const CascadeState& first = trajectory.states.front();
    const CascadeState& last = trajectory.terminal();
    const std::size_t begin = first.fictitious_bank_present ? 1 : 0;

    for (std::size_t i = begin; i < first.size(); ++i) {
        Money min_e = first.banks[i].E, min_c = first.banks[i].C;
        for (const CascadeState& st : trajectory.states) {
            min_e = std::min(min_e, st.banks[i].E);
            min_c = std::min(min_c, st.banks[i].C);
        }
        const bool insolvent = min_e <= 0;
        const bool illiquid = min_c <= 0;
        m.insolvent += insolvent;
        m.illiquid += illiquid;
        m.impaired += insolvent || illiquid;
        m.equity_loss += first.banks[i].E - last.banks[i].E;
    }
    m.final_pi = last.market.pi;
    m.final_pi_tilde = last.market.pi_tilde;
    m.days = trajectory.days;
    m.converged = trajectory.converged;
    return m;
}

namespace {

double quantile(std::vector<double> sorted, double q) {
    if (sorted.empty()) return 0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1 - frac) + sorted[hi] * frac;
}

}  // namespace

SummaryTable monte_carlo(const std::vector<GridCell>& grid, int n_seeds,
                         std::uint64_t base_seed, int workers) {
    if (n_seeds < 1) throw ConfigError("need at least one seed per grid cell");
    if (workers < 1) throw ConfigError("worker count must be positive");

    // One independent run per (cell, seed) pair. Workers fill slots of a
    // preallocated table, so aggregation never depends on scheduling.
    const std::size_t total = grid.size() * static_cast<std::size_t>(n_seeds);
    std::vector<RunMetrics> results(total);
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (;;) {
            const std::size_t t = cursor.fetch_add(1);
            if (t >= total) return;
            const std::size_t c = t / static_cast<std::size_t>(n_seeds);
            const std::size_t s = t % static_cast<std::size_t>(n_seeds);
            try {
                const GridCell& cell = grid[c];
                const std::uint64_t run_seed = mix(base_seed, (c << 20) + s);
                NetworkSpec net = cell.net;
                net.seed = run_seed;
                const FinancialSystem sys = generate_system(net, cell.bs);
                const TriggerShock shock =
                    make_trigger(sys, cell.trigger, run_seed + 1);
                const FinancialSystem post = apply_trigger(sys, shock);
                results[t] = summarize(run_model(post, cell.model));
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                cursor.store(total);
                return;
            }
        }
    };

    if (workers == 1 || total <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        const int n_threads = std::min<int>(workers, static_cast<int>(total));
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int w = 0; w < n_threads; ++w) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    SummaryTable table;
    for (std::size_t c = 0; c < grid.size(); ++c) {
        CellSummary row;
        row.name = grid[c].name;
        row.mean_final_pi = 0;
        row.mean_final_pi_tilde = 0;
        std::vector<double> losses;

        for (int s = 0; s < n_seeds; ++s) {
            const RunMetrics& m = results[c * static_cast<std::size_t>(n_seeds) +
                                          static_cast<std::size_t>(s)];
            row.n_runs += 1;
            row.n_failed += !m.converged;
            row.mean_insolvent += m.insolvent;
            row.mean_illiquid += m.illiquid;
            row.mean_impaired += m.impaired;
            row.mean_equity_loss += m.equity_loss;
            row.mean_final_pi += m.final_pi;
            row.mean_final_pi_tilde += m.final_pi_tilde;
            row.mean_days += m.days;
            losses.push_back(m.equity_loss);
        }

        const double inv = 1.0 / row.n_runs;
        row.mean_insolvent *= inv;
        row.mean_illiquid *= inv;
        row.mean_impaired *= inv;
        row.mean_equity_loss *= inv;
        row.mean_final_pi *= inv;
        row.mean_final_pi_tilde *= inv;
        row.mean_days *= inv;

        std::sort(losses.begin(), losses.end());
        row.q05_equity_loss = quantile(losses, 0.05);
        row.median_equity_loss = quantile(losses, 0.5);
        row.q95_equity_loss = quantile(losses, 0.95);

        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace cascade
