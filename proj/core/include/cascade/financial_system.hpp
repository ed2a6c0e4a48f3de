#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cascade/types.hpp"

namespace cascade {

/// A network of banks: balance sheets plus the interbank exposure matrix.
/// When a fictitious bank is present it occupies index 0 and is never
/// marked insolvent or illiquid by any cascade step.
struct FinancialSystem {
    std::vector<BalanceSheet> banks;
    ExposureMatrix exposures;
    bool fictitious_bank_present = false;

    std::size_t size() const { return banks.size(); }
};

/// Day-0 trigger. Entries are <= 0: delta_A is applied as dA = dE (asset
/// price shock), delta_D as dD = dC (deposit withdrawal shock).
struct TriggerShock {
    std::vector<Money> delta_A;
    std::vector<Money> delta_D;

    static TriggerShock none(std::size_t n) {
        return TriggerShock{std::vector<Money>(n, 0.0), std::vector<Money>(n, 0.0)};
    }
};

enum class ViolationKind {
    identity,        // per-bank accounting identity off
    row_sum,         // X_i != sum_j omega(i,j)
    col_sum,         // Z_i != sum_j omega(j,i)
    negative_entry,  // Z, A, X, D or an exposure below zero
    diagonal,        // omega(i,i) != 0
};

struct Violation {
    ViolationKind kind;
    std::size_t bank = 0;
    double magnitude = 0;
    std::string describe() const;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Checks every identity of the system at relative tolerance `tol` and
/// reports all violations. Throws StructuralError on dimension mismatch.
ValidationReport validate_system(const FinancialSystem& system, double tol = 1e-9);

/// Applies the day-0 shock; the result may have negative C or E.
/// Throws InfeasibleShockError when a shock exceeds the entry it reduces.
FinancialSystem apply_trigger(const FinancialSystem& system, const TriggerShock& shock);

/// The asset-liability duality transform: A<->D, Z<->X, C<->E per bank and
/// the exposure matrix transposed. An involution.
FinancialSystem al_dual(const FinancialSystem& system);

/// Embeds the system into an (N+1)-bank system with a never-impaired bank
/// at index 0. loans_to_banks[i] is the amount bank 0 lends to bank i
/// (omega(i,0)); borrowings_from_banks[i] is the amount bank 0 borrows
/// from bank i (omega(0,i)). Bank 0's external entries close its identity.
FinancialSystem add_fictitious_bank(const FinancialSystem& system,
                                    const std::vector<Money>& loans_to_banks,
                                    const std::vector<Money>& borrowings_from_banks);

/// The construction that pays withdrawals from cash and interbank assets in
/// equal proportion: every bank's liquid assets become a loan to the
/// fictitious bank and C is set to zero.
FinancialSystem sh_lee_transform(const FinancialSystem& system);

}  // namespace cascade
