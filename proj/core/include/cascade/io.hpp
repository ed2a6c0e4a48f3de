#pragma once

#include <string>

#include "cascade/cascade_state.hpp"
#include "cascade/financial_system.hpp"
#include "cascade/scenarios.hpp"

#include <json.hpp>

namespace cascade {

/// Shortest round-trip decimal representation of a double.
std::string fmt_double(double v);

// System JSON schema:
//   {"version": 1,
//    "banks": [{"id": 0, "Z": .., "A": .., "C": .., "X": .., "D": .., "E": ..}, ...],
//    "exposures": [[row0...], [row1...], ...]   // dense row-major
//                 | {"n": N, "triplets": [[i, j, value], ...]}  // sparse
//    "fictitious_bank": false}
nlohmann::json system_to_json(const FinancialSystem& system);
FinancialSystem system_from_json(const nlohmann::json& j);

/// One row per bank per day: day,bank,p,p_tilde,q,q_tilde,E,C,delta,sigma.
std::string trajectory_csv(const CascadeTrajectory& trajectory);

/// One row per day: day,pi,pi_tilde,s,s_tilde,ell,ell_prime,d_tilde,e_tilde.
std::string market_csv(const CascadeTrajectory& trajectory);

/// Per-step audit records, one JSON object per line.
std::string records_jsonl(const CascadeTrajectory& trajectory);

std::string summary_csv(const SummaryTable& table);

/// Writes via a temp file in the same directory, then renames, so readers
/// never observe partial artifacts.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace cascade
