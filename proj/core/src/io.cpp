#include "cascade/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace cascade {

std::string fmt_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

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

double require_number(const nlohmann::json& j, const char* key, const char* where) {
    if (!j.contains(key))
        throw ConfigError(std::string("missing key \"") + key + "\" in " + where);
    if (!j.at(key).is_number())
        throw ConfigError(std::string("key \"") + key + "\" in " + where +
                          " must be a number");
    return j.at(key).get<double>();
}

}  // namespace

nlohmann::json system_to_json(const FinancialSystem& system) {
    nlohmann::json j;
    j["version"] = 1;
    j["banks"] = nlohmann::json::array();
    for (std::size_t i = 0; i < system.size(); ++i) {
        const BalanceSheet& b = system.banks[i];
        j["banks"].push_back({{"id", i},
                              {"Z", b.Z},
                              {"A", b.A},
                              {"C", b.C},
                              {"X", b.X},
                              {"D", b.D},
                              {"E", b.E}});
    }
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < system.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < system.size(); ++k)
            row.push_back(system.exposures(i, k));
        rows.push_back(std::move(row));
    }
    j["exposures"] = std::move(rows);
    j["fictitious_bank"] = system.fictitious_bank_present;
    return j;
}

FinancialSystem system_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("system document must be a JSON object");
    require_keys(j, {"version", "banks", "exposures", "fictitious_bank"}, "system");
    if (!j.contains("version") || j.at("version") != 1)
        throw ConfigError("system document must declare \"version\": 1");
    if (!j.contains("banks") || !j.at("banks").is_array() || j.at("banks").empty())
        throw ConfigError("system document needs a non-empty \"banks\" array");

    FinancialSystem sys;
    const auto& banks = j.at("banks");
    const std::size_t n = banks.size();
    sys.banks.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& jb = banks.at(i);
        if (!jb.is_object()) throw ConfigError("each bank must be a JSON object");
        require_keys(jb, {"id", "Z", "A", "C", "X", "D", "E"}, "bank");
        if (jb.contains("id") &&
            jb.at("id").get<std::size_t>() != i)
            throw ConfigError("bank ids must be 0..N-1 in order");
        BalanceSheet& b = sys.banks[i];
        b.Z = require_number(jb, "Z", "bank");
        b.A = require_number(jb, "A", "bank");
        b.C = require_number(jb, "C", "bank");
        b.X = require_number(jb, "X", "bank");
        b.D = require_number(jb, "D", "bank");
        b.E = require_number(jb, "E", "bank");
    }

    if (!j.contains("exposures"))
        throw ConfigError("system document needs \"exposures\"");
    const auto& je = j.at("exposures");
    sys.exposures = ExposureMatrix(n);
    if (je.is_array()) {
        if (je.size() != n) throw ConfigError("dense exposures must have N rows");
        for (std::size_t i = 0; i < n; ++i) {
            const auto& row = je.at(i);
            if (!row.is_array() || row.size() != n)
                throw ConfigError("dense exposure rows must have N entries");
            for (std::size_t k = 0; k < n; ++k) {
                if (!row.at(k).is_number())
                    throw ConfigError("exposure entries must be numbers");
                sys.exposures(i, k) = row.at(k).get<double>();
            }
        }
    } else if (je.is_object()) {
        require_keys(je, {"n", "triplets"}, "exposures");
        if (!je.contains("n") || je.at("n").get<std::size_t>() != n)
            throw ConfigError("sparse exposures must declare \"n\" equal to the bank count");
        if (!je.contains("triplets") || !je.at("triplets").is_array())
            throw ConfigError("sparse exposures need a \"triplets\" array");
        for (const auto& t : je.at("triplets")) {
            if (!t.is_array() || t.size() != 3)
                throw ConfigError("each exposure triplet must be [i, j, value]");
            const std::size_t i = t.at(0).get<std::size_t>();
            const std::size_t k = t.at(1).get<std::size_t>();
            if (i >= n || k >= n)
                throw ConfigError("exposure triplet index out of range");
            sys.exposures(i, k) = t.at(2).get<double>();
        }
    } else {
        throw ConfigError("\"exposures\" must be a dense array or a triplet object");
    }

    if (j.contains("fictitious_bank")) {
        if (!j.at("fictitious_bank").is_boolean())
            throw ConfigError("\"fictitious_bank\" must be a boolean");
        sys.fictitious_bank_present = j.at("fictitious_bank").get<bool>();
    }
    return sys;
}

std::string trajectory_csv(const CascadeTrajectory& trajectory) {
    std::string out = "day,bank,p,p_tilde,q,q_tilde,E,C,delta,sigma\n";
    for (const CascadeState& st : trajectory.states) {
        for (std::size_t i = 0; i < st.size(); ++i) {
            out += std::to_string(st.day);
            out += ',';
            out += std::to_string(i);
            for (double v : {st.p[i], st.p_tilde[i], st.q[i], st.q_tilde[i],
                             st.banks[i].E, st.banks[i].C, st.delta[i], st.sigma[i]}) {
                out += ',';
                out += fmt_double(v);
            }
            out += '\n';
        }
    }
    return out;
}

std::string market_csv(const CascadeTrajectory& trajectory) {
    std::string out = "day,pi,pi_tilde,s,s_tilde,ell,ell_prime,d_tilde,e_tilde\n";
    for (const CascadeState& st : trajectory.states) {
        const MarketState& m = st.market;
        out += std::to_string(st.day);
        for (double v : {m.pi, m.pi_tilde, m.s, m.s_tilde, m.ell, m.ell_prime,
                         m.d_tilde, m.e_tilde}) {
            out += ',';
            out += fmt_double(v);
        }
        out += '\n';
    }
    return out;
}

std::string records_jsonl(const CascadeTrajectory& trajectory) {
    std::string out;
    for (const StepRecord& r : trajectory.records) {
        nlohmann::json j;
        j["day"] = r.day;
        j["p_dot"] = r.p_dot;
        j["q_dot"] = r.q_dot;
        j["p_tilde_dot"] = r.p_tilde_dot;
        j["q_tilde_dot"] = r.q_tilde_dot;
        j["identity_residual_pre"] = r.identity_residual_pre;
        j["identity_residual_post"] = r.identity_residual_post;
        j["writeoff_total"] = r.writeoff_total;
        j["pi_before"] = r.pi_before;
        j["pi_after"] = r.pi_after;
        j["pi_tilde_before"] = r.pi_tilde_before;
        j["pi_tilde_after"] = r.pi_tilde_after;
        j["units_sold"] = r.units_sold;
        j["debt_restructured"] = r.debt_restructured;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string summary_csv(const SummaryTable& table) {
    std::string out =
        "cell,n_runs,n_failed,mean_insolvent,mean_illiquid,mean_impaired,"
        "mean_equity_loss,q05_equity_loss,median_equity_loss,q95_equity_loss,"
        "mean_final_pi,mean_final_pi_tilde,mean_days\n";
    for (const CellSummary& r : table.rows) {
        out += r.name;
        out += ',';
        out += std::to_string(r.n_runs);
        out += ',';
        out += std::to_string(r.n_failed);
        for (double v : {r.mean_insolvent, r.mean_illiquid, r.mean_impaired,
                         r.mean_equity_loss, r.q05_equity_loss,
                         r.median_equity_loss, r.q95_equity_loss, r.mean_final_pi,
                         r.mean_final_pi_tilde, r.mean_days}) {
            out += ',';
            out += fmt_double(v);
        }
        out += '\n';
    }
    return out;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot open " + tmp + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f) throw Error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("cannot rename " + tmp + " to " + path);
    }
}

}  // namespace cascade
