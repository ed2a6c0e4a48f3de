#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cascade {

/// All balance-sheet quantities are mark-to-market money amounts.
using Money = double;

/// Per-bank balance sheet: interbank assets Z, external fixed assets A,
/// external liquid assets C, interbank debt X, external debt D, equity E.
/// C and E may go negative mid-cascade (overdraft / insolvency).
struct BalanceSheet {
    Money Z = 0;
    Money A = 0;
    Money C = 0;
    Money X = 0;
    Money D = 0;
    Money E = 0;

    Money assets() const { return Z + A + C; }
    Money liabilities() const { return X + D + E; }
    /// Signed accounting-identity residual, assets minus liabilities.
    Money identity_residual() const { return assets() - liabilities(); }
    /// Scale used for relative identity checks.
    Money identity_scale() const;
};

struct BankStatus {
    bool solvent = true;  // E > 0
    bool liquid = true;   // C > 0
    bool impaired() const { return !solvent || !liquid; }
    static BankStatus of(const BalanceSheet& b) {
        return BankStatus{b.E > 0, b.C > 0};
    }
};

/// Dense N x N nonnegative interbank exposure matrix with zero diagonal.
/// Entry (i, j) is the nominal exposure of bank j to bank i: bank i owes
/// bank j. Row sums give X, column sums give Z.
class ExposureMatrix {
public:
    ExposureMatrix() = default;
    explicit ExposureMatrix(std::size_t n) : n_(n), w_(n * n, 0.0) {}

    std::size_t size() const { return n_; }

    Money operator()(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
    Money& operator()(std::size_t i, std::size_t j) { return w_[i * n_ + j]; }

    Money row_sum(std::size_t i) const;
    Money col_sum(std::size_t j) const;

    void scale_row(std::size_t i, double f);
    void scale_col(std::size_t j, double f);

    ExposureMatrix transposed() const;

    const std::vector<Money>& data() const { return w_; }

    bool operator==(const ExposureMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<Money> w_;
};

// ---- error types ----

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dimension mismatch or otherwise malformed input data.
struct StructuralError : Error {
    using Error::Error;
};

/// Trigger shock larger than the balance-sheet entry it draws down.
struct InfeasibleShockError : Error {
    using Error::Error;
};

/// Bad configuration value (threshold parameters, solver settings, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// Scenario generation could not satisfy the requested ratios.
struct GenerationError : Error {
    using Error::Error;
};

/// Fixed-point iteration exhausted max_iter. Carries the last iterate.
struct ConvergenceError : Error {
    ConvergenceError(std::string msg, int iters, double resid,
                     std::vector<double> last = {})
        : Error(std::move(msg)), iterations(iters), residual(resid),
          last_iterate(std::move(last)) {}
    int iterations;
    double residual;
    std::vector<double> last_iterate;
};

/// Accounting identity broken beyond tolerance after a step. A bug trap:
/// never expected on well-formed input.
struct AuditError : Error {
    using Error::Error;
};

}  // namespace cascade
