#include "cascade/financial_system.hpp"

#include <cmath>
#include <cstdio>

namespace cascade {

Money BalanceSheet::identity_scale() const {
    return std::abs(Z) + std::abs(A) + std::abs(C) + std::abs(X) + std::abs(D) +
           std::abs(E) + 1.0;
}

Money ExposureMatrix::row_sum(std::size_t i) const {
    Money s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += w_[i * n_ + j];
    return s;
}

Money ExposureMatrix::col_sum(std::size_t j) const {
    Money s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += w_[i * n_ + j];
    return s;
}

void ExposureMatrix::scale_row(std::size_t i, double f) {
    for (std::size_t j = 0; j < n_; ++j) w_[i * n_ + j] *= f;
}

void ExposureMatrix::scale_col(std::size_t j, double f) {
    for (std::size_t i = 0; i < n_; ++i) w_[i * n_ + j] *= f;
}

ExposureMatrix ExposureMatrix::transposed() const {
    ExposureMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::string Violation::describe() const {
    char buf[128];
    const char* what = "check";
    switch (kind) {
        case ViolationKind::identity: what = "accounting identity"; break;
        case ViolationKind::row_sum: what = "row sum vs X"; break;
        case ViolationKind::col_sum: what = "column sum vs Z"; break;
        case ViolationKind::negative_entry: what = "negative entry"; break;
        case ViolationKind::diagonal: what = "nonzero diagonal"; break;
    }
    std::snprintf(buf, sizeof buf, "%s off by %.6g at bank %zu", what, magnitude, bank);
    return buf;
}

ValidationReport validate_system(const FinancialSystem& system, double tol) {
    const std::size_t n = system.size();
    if (n < 1) throw StructuralError("system must have at least one bank");
    if (system.exposures.size() != n)
        throw StructuralError("exposure matrix size does not match bank count");

    ValidationReport report;
    auto flag = [&](ViolationKind k, std::size_t bank, double mag) {
        report.violations.push_back({k, bank, mag});
    };

    for (std::size_t i = 0; i < n; ++i) {
        const BalanceSheet& b = system.banks[i];
        const double scale = b.identity_scale();
        const double resid = b.identity_residual();
        if (std::abs(resid) > tol * scale) flag(ViolationKind::identity, i, resid);

        if (b.Z < 0) flag(ViolationKind::negative_entry, i, b.Z);
        if (b.A < 0) flag(ViolationKind::negative_entry, i, b.A);
        if (b.X < 0) flag(ViolationKind::negative_entry, i, b.X);
        if (b.D < 0) flag(ViolationKind::negative_entry, i, b.D);

        const double rs = system.exposures.row_sum(i);
        if (std::abs(rs - b.X) > tol * (std::abs(rs) + std::abs(b.X) + 1))
            flag(ViolationKind::row_sum, i, rs - b.X);
        const double cs = system.exposures.col_sum(i);
        if (std::abs(cs - b.Z) > tol * (std::abs(cs) + std::abs(b.Z) + 1))
            flag(ViolationKind::col_sum, i, cs - b.Z);

        if (system.exposures(i, i) != 0.0)
            flag(ViolationKind::diagonal, i, system.exposures(i, i));
        for (std::size_t j = 0; j < n; ++j)
            if (system.exposures(i, j) < 0)
                flag(ViolationKind::negative_entry, i, system.exposures(i, j));
    }
    return report;
}

FinancialSystem apply_trigger(const FinancialSystem& system, const TriggerShock& shock) {
    const std::size_t n = system.size();
    if (shock.delta_A.size() != n || shock.delta_D.size() != n)
        throw StructuralError("trigger shock vectors must have one entry per bank");

    FinancialSystem out = system;
    for (std::size_t i = 0; i < n; ++i) {
        const Money da = shock.delta_A[i];
        const Money dd = shock.delta_D[i];
        if (da > 0 || dd > 0)
            throw InfeasibleShockError("trigger shocks must be non-positive");
        BalanceSheet& b = out.banks[i];
        if (-da > b.A)
            throw InfeasibleShockError("asset shock exceeds A at bank " + std::to_string(i));
        if (-dd > b.D)
            throw InfeasibleShockError("withdrawal shock exceeds D at bank " + std::to_string(i));
        b.A += da;
        b.E += da;
        b.D += dd;
        b.C += dd;
    }
    return out;
}

FinancialSystem al_dual(const FinancialSystem& system) {
    FinancialSystem out;
    out.fictitious_bank_present = system.fictitious_bank_present;
    out.banks.reserve(system.size());
    for (const BalanceSheet& b : system.banks)
        out.banks.push_back(BalanceSheet{b.X, b.D, b.E, b.Z, b.A, b.C});
    out.exposures = system.exposures.transposed();
    return out;
}

FinancialSystem add_fictitious_bank(const FinancialSystem& system,
                                    const std::vector<Money>& loans_to_banks,
                                    const std::vector<Money>& borrowings_from_banks) {
    const std::size_t n = system.size();
    if (loans_to_banks.size() != n || borrowings_from_banks.size() != n)
        throw StructuralError("fictitious-bank vectors must have one entry per bank");

    FinancialSystem out;
    out.fictitious_bank_present = true;
    out.banks.resize(n + 1);
    out.exposures = ExposureMatrix(n + 1);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.exposures(i + 1, j + 1) = system.exposures(i, j);

    Money z0 = 0, x0 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (loans_to_banks[i] < 0 || borrowings_from_banks[i] < 0)
            throw StructuralError("fictitious-bank exposures must be nonnegative");
        out.exposures(i + 1, 0) = loans_to_banks[i];        // bank i owes bank 0
        out.exposures(0, i + 1) = borrowings_from_banks[i]; // bank 0 owes bank i
        z0 += loans_to_banks[i];
        x0 += borrowings_from_banks[i];
    }

    // Bank 0 closes its identity with external liquid assets or debt.
    BalanceSheet& b0 = out.banks[0];
    b0.Z = z0;
    b0.X = x0;
    if (x0 >= z0) b0.C = x0 - z0;
    else b0.D = z0 - x0;

    for (std::size_t i = 0; i < n; ++i) {
        BalanceSheet b = system.banks[i];
        b.Z += borrowings_from_banks[i];
        b.X += loans_to_banks[i];
        // The new interbank positions are funded by external ones, so the
        // bank's totals stay balanced: new borrowing arrives as cash, new
        // lending to bank 0 replaces cash.
        b.C += loans_to_banks[i] - borrowings_from_banks[i];
        if (b.C < 0) {
            // Not enough cash to carry the loan; fund it from external debt.
            b.D += -b.C;
            b.C = 0;
        }
        out.banks[i + 1] = b;
    }
    return out;
}

FinancialSystem sh_lee_transform(const FinancialSystem& system) {
    const std::size_t n = system.size();
    std::vector<Money> cash(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (system.banks[i].C < 0)
            throw StructuralError("cannot pool negative cash into the fictitious bank");
        cash[i] = system.banks[i].C;
    }
    // Each bank deposits its cash with bank 0 (bank 0 owes bank i), so
    // add_fictitious_bank moves C into Z and bank 0 holds the pooled cash.
    return add_fictitious_bank(system, std::vector<Money>(n, 0.0), cash);
}

}  // namespace cascade
