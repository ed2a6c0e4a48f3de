#include "cascade/runner.hpp"

#include "cascade/esl_market.hpp"
#include "cascade/liquidity.hpp"
#include "cascade/sl_cascade.hpp"
#include "cascade/solvency.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cascade {

namespace {

/// System failed validate_system; distinct exit code from config errors.
struct ValidationFailure : Error {
    explicit ValidationFailure(ValidationReport r)
        : Error("system failed validation"), report(std::move(r)) {}
    ValidationReport report;
};

void require_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                  const char* where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : allowed)
            if (item.key() == k) { ok = true; break; }
        if (!ok)
            throw ConfigError(std::string("unknown key \"") + item.key() + "\" in " +
                              where);
    }
}

const nlohmann::json& require_object(const nlohmann::json& j, const char* key,
                                     const char* where) {
    if (!j.contains(key) || !j.at(key).is_object())
        throw ConfigError(std::string("\"") + key + "\" in " + where +
                          " must be an object");
    return j.at(key);
}

double get_number(const nlohmann::json& j, const char* key, double fallback,
                  const char* where) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw ConfigError(std::string("\"") + key + "\" in " + where +
                          " must be a number");
    return j.at(key).get<double>();
}

bool get_bool(const nlohmann::json& j, const char* key, bool fallback,
              const char* where) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean())
        throw ConfigError(std::string("\"") + key + "\" in " + where +
                          " must be a boolean");
    return j.at(key).get<bool>();
}

std::string get_string(const nlohmann::json& j, const char* key,
                       const std::string& fallback, const char* where) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string())
        throw ConfigError(std::string("\"") + key + "\" in " + where +
                          " must be a string");
    return j.at(key).get<std::string>();
}

ModelKind parse_model(const std::string& name) {
    if (name == "en") return ModelKind::en;
    if (name == "gl") return ModelKind::gl;
    if (name == "sl") return ModelKind::sl;
    if (name == "esl") return ModelKind::esl;
    throw ConfigError("unknown model \"" + name + "\" (expected en, gl, sl or esl)");
}

ThresholdSpec parse_threshold(const nlohmann::json& j) {
    require_keys(j, {"variant", "r1", "r2", "lambda"}, "threshold");
    ThresholdSpec t;
    const std::string v = get_string(j, "variant", "soft", "threshold");
    if (v == "soft") t.variant = ThresholdVariant::soft;
    else if (v == "zero_recovery") t.variant = ThresholdVariant::zero_recovery;
    else if (v == "fractional_recovery")
        t.variant = ThresholdVariant::fractional_recovery;
    else if (v == "freeze") t.variant = ThresholdVariant::freeze;
    else throw ConfigError("unknown threshold variant \"" + v + "\"");
    t.r1 = get_number(j, "r1", t.r1, "threshold");
    t.r2 = get_number(j, "r2", t.r2, "threshold");
    t.lambda = get_number(j, "lambda", t.lambda, "threshold");
    t.validate();
    return t;
}

ImpactParams parse_impact(const nlohmann::json& j, bool& alpha_default) {
    require_keys(j,
                 {"alpha", "beta", "beta_prime", "alpha_tilde", "beta_tilde",
                  "beta_tilde_prime"},
                 "impact");
    ImpactParams k;
    alpha_default = false;
    if (j.contains("alpha") && j.at("alpha").is_string()) {
        if (j.at("alpha").get<std::string>() != "default")
            throw ConfigError("\"alpha\" must be a number or \"default\"");
        alpha_default = true;
    } else {
        k.alpha = get_number(j, "alpha", 0, "impact");
    }
    k.beta = get_number(j, "beta", 0, "impact");
    k.beta_prime = get_number(j, "beta_prime", 0, "impact");
    k.alpha_tilde = get_number(j, "alpha_tilde", 0, "impact");
    k.beta_tilde = get_number(j, "beta_tilde", 0, "impact");
    k.beta_tilde_prime = get_number(j, "beta_tilde_prime", 0, "impact");
    k.validate();
    return k;
}

SolverParams parse_solver(const nlohmann::json& j) {
    require_keys(j, {"tol", "max_iter"}, "solver");
    SolverParams s;
    s.tol = get_number(j, "tol", s.tol, "solver");
    if (!(s.tol > 0)) throw ConfigError("solver tolerance must be positive");
    const double mi = get_number(j, "max_iter", 0, "solver");
    if (mi < 0 || mi != static_cast<int>(mi))
        throw ConfigError("solver max_iter must be a nonnegative integer");
    s.max_iter = static_cast<int>(mi);
    return s;
}

NetworkSpec parse_network(const nlohmann::json& j) {
    require_keys(j,
                 {"n_banks", "topology", "p_edge", "n_core", "p_cc", "p_cp", "p_pp",
                  "exposure_mean", "exposure_dispersion", "seed"},
                 "network");
    NetworkSpec n;
    n.n_banks = static_cast<std::size_t>(get_number(j, "n_banks", 10, "network"));
    const std::string topo = get_string(j, "topology", "erdos_renyi", "network");
    if (topo == "erdos_renyi") n.topology = Topology::erdos_renyi;
    else if (topo == "core_periphery") n.topology = Topology::core_periphery;
    else throw ConfigError("unknown topology \"" + topo + "\"");
    n.p_edge = get_number(j, "p_edge", n.p_edge, "network");
    n.n_core = static_cast<std::size_t>(get_number(j, "n_core", 0, "network"));
    n.p_cc = get_number(j, "p_cc", n.p_cc, "network");
    n.p_cp = get_number(j, "p_cp", n.p_cp, "network");
    n.p_pp = get_number(j, "p_pp", n.p_pp, "network");
    n.exposure_mean = get_number(j, "exposure_mean", n.exposure_mean, "network");
    n.exposure_dispersion =
        get_number(j, "exposure_dispersion", n.exposure_dispersion, "network");
    n.seed = static_cast<std::uint64_t>(get_number(j, "seed", 1, "network"));
    return n;
}

BalanceSheetSpec parse_balance_sheet(const nlohmann::json& j) {
    require_keys(j, {"capital_ratio", "cash_ratio", "fixed_asset_share"},
                 "balance_sheet");
    BalanceSheetSpec b;
    b.capital_ratio = get_number(j, "capital_ratio", b.capital_ratio, "balance_sheet");
    b.cash_ratio = get_number(j, "cash_ratio", b.cash_ratio, "balance_sheet");
    b.fixed_asset_share =
        get_number(j, "fixed_asset_share", b.fixed_asset_share, "balance_sheet");
    return b;
}

TriggerSpec parse_trigger_spec(const nlohmann::json& j) {
    require_keys(j, {"asset_shock_frac", "withdrawal_frac", "n_shocked"}, "trigger");
    TriggerSpec t;
    t.asset_shock_frac = get_number(j, "asset_shock_frac", 0, "trigger");
    t.withdrawal_frac = get_number(j, "withdrawal_frac", 0, "trigger");
    t.n_shocked = static_cast<std::size_t>(get_number(j, "n_shocked", 1, "trigger"));
    return t;
}

std::vector<Money> parse_money_array(const nlohmann::json& j, const char* where) {
    if (!j.is_array())
        throw ConfigError(std::string(where) + " must be an array of numbers");
    std::vector<Money> out;
    for (const auto& v : j) {
        if (!v.is_number())
            throw ConfigError(std::string(where) + " must contain only numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open " + path);
    try {
        return nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
}

nlohmann::json error_json(const char* type, const std::string& message) {
    return nlohmann::json{{"error", {{"type", type}, {"message", message}}}};
}

void emit_error(const char* type, const std::string& message) {
    std::cerr << error_json(type, message).dump() << "\n";
}

int workers_from_env() {
    const char* raw = std::getenv("CASCADE_WORKERS");
    if (!raw || !*raw) return 1;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (*end != '\0' || v < 1)
        throw ConfigError("CASCADE_WORKERS must be a positive integer");
    return static_cast<int>(v);
}

CascadeTrajectory dispatch(const FinancialSystem& post_trigger,
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

RunConfig parse_run_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    require_keys(j,
                 {"version", "model", "system", "system_file", "generator", "trigger",
                  "threshold", "impact", "solver", "sigma_prefactor",
                  "compose_s_after_l", "outputs", "seed", "monte_carlo"},
                 "config");
    if (!j.contains("version") || j.at("version") != 1)
        throw ConfigError("config must declare \"version\": 1");

    RunConfig cfg;
    if (!j.contains("model")) throw ConfigError("config needs a \"model\"");
    cfg.model.model = parse_model(get_string(j, "model", "", "config"));

    const int sources = j.contains("system") + j.contains("system_file") +
                        j.contains("generator");
    if (sources != 1)
        throw ConfigError(
            "config needs exactly one of \"system\", \"system_file\", \"generator\"");
    if (j.contains("system")) {
        cfg.source.inline_system = j.at("system");
    } else if (j.contains("system_file")) {
        cfg.source.file_path = get_string(j, "system_file", "", "config");
    } else {
        const auto& g = require_object(j, "generator", "config");
        require_keys(g, {"network", "balance_sheet"}, "generator");
        cfg.source.generator_net = parse_network(require_object(g, "network", "generator"));
        cfg.source.generator_bs =
            parse_balance_sheet(require_object(g, "balance_sheet", "generator"));
    }

    if (j.contains("trigger")) {
        const auto& t = require_object(j, "trigger", "config");
        if (t.contains("delta_A") || t.contains("delta_D")) {
            require_keys(t, {"delta_A", "delta_D"}, "trigger");
            TriggerShock shock;
            shock.delta_A = parse_money_array(t.at("delta_A"), "trigger delta_A");
            shock.delta_D = parse_money_array(t.at("delta_D"), "trigger delta_D");
            cfg.trigger = std::move(shock);
        } else {
            cfg.trigger_spec = parse_trigger_spec(t);
        }
    }

    if (j.contains("threshold"))
        cfg.model.threshold = parse_threshold(require_object(j, "threshold", "config"));
    if (j.contains("impact"))
        cfg.model.impact = parse_impact(require_object(j, "impact", "config"),
                                        cfg.impact_alpha_default);
    if (j.contains("solver"))
        cfg.model.solver = parse_solver(require_object(j, "solver", "config"));
    cfg.model.sigma_prefactor = get_bool(j, "sigma_prefactor", true, "config");
    cfg.model.compose_s_after_l = get_bool(j, "compose_s_after_l", false, "config");
    cfg.seed = static_cast<std::uint64_t>(get_number(j, "seed", 1, "config"));

    if (j.contains("outputs")) {
        const auto& o = require_object(j, "outputs", "config");
        require_keys(o,
                     {"trajectory_csv", "market_csv", "summary_json", "audit_jsonl",
                      "mc_summary_csv"},
                     "outputs");
        cfg.outputs.trajectory_csv = get_string(o, "trajectory_csv", "", "outputs");
        cfg.outputs.market_csv = get_string(o, "market_csv", "", "outputs");
        cfg.outputs.summary_json = get_string(o, "summary_json", "", "outputs");
        cfg.outputs.audit_jsonl = get_string(o, "audit_jsonl", "", "outputs");
        cfg.outputs.mc_summary_csv = get_string(o, "mc_summary_csv", "", "outputs");
    }

    if (j.contains("monte_carlo")) {
        const auto& mc = require_object(j, "monte_carlo", "config");
        require_keys(mc, {"seeds", "grid"}, "monte_carlo");
        const double seeds = get_number(mc, "seeds", 1, "monte_carlo");
        if (seeds < 1 || seeds != static_cast<int>(seeds))
            throw ConfigError("monte_carlo seeds must be a positive integer");
        cfg.monte_carlo_seeds = static_cast<int>(seeds);
        if (!mc.contains("grid") || !mc.at("grid").is_array() || mc.at("grid").empty())
            throw ConfigError("monte_carlo needs a non-empty \"grid\" array");
        std::vector<GridCell> grid;
        for (const auto& jc : mc.at("grid")) {
            if (!jc.is_object())
                throw ConfigError("each grid cell must be a JSON object");
            require_keys(jc,
                         {"name", "network", "balance_sheet", "trigger", "model",
                          "threshold", "impact"},
                         "grid cell");
            GridCell cell;
            cell.name = get_string(jc, "name", "cell" + std::to_string(grid.size()),
                                   "grid cell");
            cell.net = parse_network(require_object(jc, "network", "grid cell"));
            cell.bs =
                parse_balance_sheet(require_object(jc, "balance_sheet", "grid cell"));
            if (jc.contains("trigger"))
                cell.trigger =
                    parse_trigger_spec(require_object(jc, "trigger", "grid cell"));
            cell.model = cfg.model;
            if (jc.contains("model"))
                cell.model.model = parse_model(get_string(jc, "model", "", "grid cell"));
            if (jc.contains("threshold"))
                cell.model.threshold =
                    parse_threshold(require_object(jc, "threshold", "grid cell"));
            if (jc.contains("impact")) {
                bool ignored = false;
                cell.model.impact =
                    parse_impact(require_object(jc, "impact", "grid cell"), ignored);
                if (ignored)
                    throw ConfigError(
                        "\"default\" alpha is not supported inside grid cells");
            }
            grid.push_back(std::move(cell));
        }
        cfg.monte_carlo_grid = std::move(grid);
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    return parse_run_config(load_json(path));
}

RunResult execute_run(const RunConfig& config) {
    FinancialSystem system;
    if (config.source.inline_system) {
        system = system_from_json(*config.source.inline_system);
    } else if (!config.source.file_path.empty()) {
        system = system_from_json(load_json(config.source.file_path));
    } else if (config.source.generator_net) {
        system = generate_system(*config.source.generator_net,
                                 config.source.generator_bs.value_or(BalanceSheetSpec{}));
    } else {
        throw ConfigError("run config has no system source");
    }

    ValidationReport report = validate_system(system);
    if (!report.ok()) throw ValidationFailure(std::move(report));

    TriggerShock shock = TriggerShock::none(system.size());
    if (config.trigger) {
        shock = *config.trigger;
    } else if (config.trigger_spec) {
        shock = make_trigger(system, *config.trigger_spec, config.seed);
    }

    RunResult result;
    result.post_trigger = apply_trigger(system, shock);

    ModelConfig model = config.model;
    if (config.impact_alpha_default)
        model.impact.alpha = default_alpha(result.post_trigger);

    result.trajectory = dispatch(result.post_trigger, model);
    result.metrics = summarize(result.trajectory);

    const CascadeState& last = result.trajectory.terminal();
    nlohmann::json terminal;
    terminal["p"] = last.p;
    terminal["p_tilde"] = last.p_tilde;
    terminal["q"] = last.q;
    terminal["q_tilde"] = last.q_tilde;
    std::vector<Money> e, c;
    for (const BalanceSheet& b : last.banks) {
        e.push_back(b.E);
        c.push_back(b.C);
    }
    terminal["E"] = e;
    terminal["C"] = c;

    std::vector<double> pi_path, pi_tilde_path;
    double worst_identity = 0;
    for (const CascadeState& st : result.trajectory.states) {
        pi_path.push_back(st.market.pi);
        pi_tilde_path.push_back(st.market.pi_tilde);
        worst_identity = std::max(worst_identity, st.max_identity_residual());
    }

    result.summary = {
        {"model", to_string(model.model)},
        {"threshold", to_string(model.threshold.variant)},
        {"days", result.trajectory.days},
        {"converged", result.trajectory.converged},
        {"residual", result.trajectory.residual},
        {"terminal", std::move(terminal)},
        {"counts",
         {{"insolvent", result.metrics.insolvent},
          {"illiquid", result.metrics.illiquid},
          {"impaired", result.metrics.impaired}}},
        {"total_equity_loss", result.metrics.equity_loss},
        {"pi_path", std::move(pi_path)},
        {"pi_tilde_path", std::move(pi_tilde_path)},
        {"audit",
         {{"max_identity_residual", worst_identity},
          {"ok", worst_identity <= model.audit_tol}}},
    };
    return result;
}

int run_command(const std::string& config_path) {
    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
    } catch (const ConfigError& e) {
        emit_error("config_error", e.what());
        return static_cast<int>(ExitCode::config_error);
    }

    try {
        if (cfg.model.model != ModelKind::esl &&
            (!cfg.model.impact.all_zero() || cfg.impact_alpha_default)) {
            std::cerr << nlohmann::json{
                             {"warning",
                              "impact parameters are ignored by model " +
                                  to_string(cfg.model.model)}}
                             .dump()
                      << "\n";
            cfg.model.impact = ImpactParams{};
            cfg.impact_alpha_default = false;
        }

        if (cfg.monte_carlo_grid) {
            const SummaryTable table =
                monte_carlo(*cfg.monte_carlo_grid, cfg.monte_carlo_seeds, cfg.seed,
                            workers_from_env());
            if (!cfg.outputs.mc_summary_csv.empty())
                atomic_write_file(cfg.outputs.mc_summary_csv, summary_csv(table));
            if (!cfg.outputs.summary_json.empty()) {
                nlohmann::json rows = nlohmann::json::array();
                for (const CellSummary& r : table.rows)
                    rows.push_back({{"cell", r.name},
                                    {"n_runs", r.n_runs},
                                    {"n_failed", r.n_failed},
                                    {"mean_insolvent", r.mean_insolvent},
                                    {"mean_illiquid", r.mean_illiquid},
                                    {"mean_impaired", r.mean_impaired},
                                    {"mean_equity_loss", r.mean_equity_loss},
                                    {"q05_equity_loss", r.q05_equity_loss},
                                    {"median_equity_loss", r.median_equity_loss},
                                    {"q95_equity_loss", r.q95_equity_loss},
                                    {"mean_final_pi", r.mean_final_pi},
                                    {"mean_final_pi_tilde", r.mean_final_pi_tilde},
                                    {"mean_days", r.mean_days}});
                atomic_write_file(cfg.outputs.summary_json,
                                  nlohmann::json{{"cells", rows}}.dump(2) + "\n");
            }
            return static_cast<int>(ExitCode::ok);
        }

        const RunResult result = execute_run(cfg);
        if (!cfg.outputs.trajectory_csv.empty())
            atomic_write_file(cfg.outputs.trajectory_csv,
                              trajectory_csv(result.trajectory));
        if (!cfg.outputs.market_csv.empty())
            atomic_write_file(cfg.outputs.market_csv, market_csv(result.trajectory));
        if (!cfg.outputs.summary_json.empty())
            atomic_write_file(cfg.outputs.summary_json, result.summary.dump(2) + "\n");
        if (!cfg.outputs.audit_jsonl.empty())
            atomic_write_file(cfg.outputs.audit_jsonl,
                              records_jsonl(result.trajectory));

        if (!result.trajectory.converged) {
            emit_error("non_convergence",
                       "cascade did not converge within max_iter; residual " +
                           std::to_string(result.trajectory.residual));
            return static_cast<int>(ExitCode::non_convergence);
        }
        return static_cast<int>(ExitCode::ok);
    } catch (const ValidationFailure& e) {
        nlohmann::json details = nlohmann::json::array();
        for (const Violation& v : e.report.violations) details.push_back(v.describe());
        nlohmann::json err = error_json("validation_failure", e.what());
        err["error"]["violations"] = std::move(details);
        std::cerr << err.dump() << "\n";
        return static_cast<int>(ExitCode::validation_failure);
    } catch (const ConfigError& e) {
        emit_error("config_error", e.what());
        return static_cast<int>(ExitCode::config_error);
    } catch (const Error& e) {
        emit_error("runtime_error", e.what());
        return static_cast<int>(ExitCode::failure);
    }
}

int compare_command(const std::string& config_a, const std::string& config_b,
                    const std::string& out_csv) {
    try {
        const RunResult a = execute_run(load_run_config(config_a));
        const RunResult b = execute_run(load_run_config(config_b));

        const CascadeState& ta = a.trajectory.terminal();
        const CascadeState& tb = b.trajectory.terminal();
        if (ta.size() != tb.size()) {
            emit_error("incompatible_runs",
                       "runs have different bank counts: " +
                           std::to_string(ta.size()) + " vs " +
                           std::to_string(tb.size()));
            return static_cast<int>(ExitCode::incompatible_runs);
        }

        const CascadeState& fa = a.trajectory.states.front();
        const CascadeState& fb = b.trajectory.states.front();
        std::string csv =
            "bank,d_p,d_p_tilde,d_q,d_q_tilde,d_E,d_C,extra_equity_loss\n";
        double tp = 0, tpt = 0, tq = 0, tqt = 0, te = 0, tc = 0, tx = 0;
        for (std::size_t i = 0; i < ta.size(); ++i) {
            const double dp = tb.p[i] - ta.p[i];
            const double dpt = tb.p_tilde[i] - ta.p_tilde[i];
            const double dq = tb.q[i] - ta.q[i];
            const double dqt = tb.q_tilde[i] - ta.q_tilde[i];
            const double de = tb.banks[i].E - ta.banks[i].E;
            const double dc = tb.banks[i].C - ta.banks[i].C;
            const double extra = (fb.banks[i].E - tb.banks[i].E) -
                                 (fa.banks[i].E - ta.banks[i].E);
            csv += std::to_string(i);
            for (double v : {dp, dpt, dq, dqt, de, dc, extra}) {
                csv += ',';
                csv += fmt_double(v);
            }
            csv += '\n';
            tp += dp; tpt += dpt; tq += dq; tqt += dqt; te += de; tc += dc;
            tx += extra;
        }
        csv += "total";
        for (double v : {tp, tpt, tq, tqt, te, tc, tx}) {
            csv += ',';
            csv += fmt_double(v);
        }
        csv += '\n';
        atomic_write_file(out_csv, csv);

        if (!a.trajectory.converged || !b.trajectory.converged) {
            emit_error("non_convergence", "one of the compared runs did not converge");
            return static_cast<int>(ExitCode::non_convergence);
        }
        return static_cast<int>(ExitCode::ok);
    } catch (const ValidationFailure& e) {
        emit_error("validation_failure", e.what());
        return static_cast<int>(ExitCode::validation_failure);
    } catch (const ConfigError& e) {
        emit_error("config_error", e.what());
        return static_cast<int>(ExitCode::config_error);
    } catch (const Error& e) {
        emit_error("runtime_error", e.what());
        return static_cast<int>(ExitCode::failure);
    }
}

int validate_command(const std::string& system_path) {
    try {
        const FinancialSystem system = system_from_json(load_json(system_path));
        const ValidationReport report = validate_system(system);
        nlohmann::json out;
        out["ok"] = report.ok();
        out["n_banks"] = system.size();
        nlohmann::json details = nlohmann::json::array();
        for (const Violation& v : report.violations) details.push_back(v.describe());
        out["violations"] = details;
        std::cout << out.dump(2) << "\n";
        if (!report.ok()) {
            emit_error("validation_failure", "system failed validation");
            return static_cast<int>(ExitCode::validation_failure);
        }
        return static_cast<int>(ExitCode::ok);
    } catch (const ConfigError& e) {
        emit_error("config_error", e.what());
        return static_cast<int>(ExitCode::config_error);
    } catch (const Error& e) {
        emit_error("runtime_error", e.what());
        return static_cast<int>(ExitCode::failure);
    }
}

int generate_command(const std::string& spec_path, const std::string& out_path) {
    try {
        const nlohmann::json j = load_json(spec_path);
        if (!j.is_object()) throw ConfigError("generator spec must be a JSON object");
        require_keys(j, {"version", "network", "balance_sheet"}, "generator spec");
        if (!j.contains("version") || j.at("version") != 1)
            throw ConfigError("generator spec must declare \"version\": 1");
        const NetworkSpec net =
            parse_network(require_object(j, "network", "generator spec"));
        BalanceSheetSpec bs;
        if (j.contains("balance_sheet"))
            bs = parse_balance_sheet(require_object(j, "balance_sheet", "generator spec"));
        const FinancialSystem system = generate_system(net, bs);
        atomic_write_file(out_path, system_to_json(system).dump(2) + "\n");
        return static_cast<int>(ExitCode::ok);
    } catch (const ConfigError& e) {
        emit_error("config_error", e.what());
        return static_cast<int>(ExitCode::config_error);
    } catch (const GenerationError& e) {
        emit_error("generation_error", e.what());
        return static_cast<int>(ExitCode::config_error);
    } catch (const Error& e) {
        emit_error("runtime_error", e.what());
        return static_cast<int>(ExitCode::failure);
    }
}

}  // namespace cascade
