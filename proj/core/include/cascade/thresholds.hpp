#pragma once

#include <string>

#include "cascade/types.hpp"

namespace cascade {

enum class ThresholdVariant {
    soft,                 // h(x) = min(1, max(0, x+1))
    zero_recovery,        // 1(x >= 0)
    fractional_recovery,  // (1-R) 1(x>=0) + R h(x/R)
    freeze,               // lambda 1(x>0) + (1-lambda)
};

/// A normalized threshold function selecting the recovery regime.
/// Monotone nondecreasing with range in [0,1]; accepts +-infinity.
struct ThresholdKind {
    ThresholdVariant variant = ThresholdVariant::soft;
    double r = 0.5;       // fractional_recovery: R in (0,1)
    double lambda = 0.5;  // freeze: lambda in [0,1]

    static ThresholdKind soft() { return {ThresholdVariant::soft, 0, 0}; }
    static ThresholdKind zero_recovery() { return {ThresholdVariant::zero_recovery, 0, 0}; }
    static ThresholdKind fractional(double R) { return {ThresholdVariant::fractional_recovery, R, 0}; }
    static ThresholdKind freeze(double lam) { return {ThresholdVariant::freeze, 0, lam}; }

    /// Throws ConfigError when a parameter is out of its domain.
    void validate() const;
};

double eval_threshold(const ThresholdKind& kind, double x);

std::string to_string(ThresholdVariant v);

}  // namespace cascade
