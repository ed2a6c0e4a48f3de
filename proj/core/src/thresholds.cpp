#include "cascade/thresholds.hpp"

#include "cascade/model_config.hpp"

#include <algorithm>
#include <cmath>

namespace cascade {

void ThresholdKind::validate() const {
    switch (variant) {
        case ThresholdVariant::soft:
        case ThresholdVariant::zero_recovery:
            break;
        case ThresholdVariant::fractional_recovery:
            if (!(r > 0.0 && r < 1.0))
                throw ConfigError("fractional recovery rate must lie in (0,1), got " +
                                  std::to_string(r));
            break;
        case ThresholdVariant::freeze:
            if (!(lambda >= 0.0 && lambda <= 1.0))
                throw ConfigError("freeze fraction must lie in [0,1], got " +
                                  std::to_string(lambda));
            break;
    }
}

namespace {

double soft_ramp(double x) {
    if (std::isnan(x)) throw ConfigError("threshold argument is NaN");
    return std::clamp(x + 1.0, 0.0, 1.0);
}

}  // namespace

double eval_threshold(const ThresholdKind& kind, double x) {
    switch (kind.variant) {
        case ThresholdVariant::soft:
            return soft_ramp(x);
        case ThresholdVariant::zero_recovery:
            if (std::isnan(x)) throw ConfigError("threshold argument is NaN");
            return x >= 0.0 ? 1.0 : 0.0;
        case ThresholdVariant::fractional_recovery: {
            if (std::isnan(x)) throw ConfigError("threshold argument is NaN");
            const double hard = x >= 0.0 ? 1.0 : 0.0;
            return (1.0 - kind.r) * hard + kind.r * soft_ramp(x / kind.r);
        }
        case ThresholdVariant::freeze:
            if (std::isnan(x)) throw ConfigError("threshold argument is NaN");
            return x > 0.0 ? 1.0 : 1.0 - kind.lambda;
    }
    throw ConfigError("unknown threshold variant");
}

ThresholdKind ThresholdSpec::p_kind() const {
    switch (variant) {
        case ThresholdVariant::soft: return ThresholdKind::soft();
        case ThresholdVariant::zero_recovery: return ThresholdKind::zero_recovery();
        case ThresholdVariant::fractional_recovery: return ThresholdKind::fractional(r1);
        case ThresholdVariant::freeze: return ThresholdKind::freeze(lambda);
    }
    throw ConfigError("unknown threshold variant");
}

ThresholdKind ThresholdSpec::q_kind() const {
    // Only the fractional variant changes how external creditors are paid;
    // zero_recovery and freeze alter the interbank side alone.
    if (variant == ThresholdVariant::fractional_recovery)
        return ThresholdKind::fractional(r2);
    return ThresholdKind::soft();
}

void ThresholdSpec::validate() const {
    p_kind().validate();
    q_kind().validate();
}

void ImpactParams::validate() const {
    const double v[] = {alpha, beta, beta_prime, alpha_tilde, beta_tilde, beta_tilde_prime};
    for (double x : v)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw ConfigError("market-impact parameters must be finite and nonnegative");
}

bool ImpactParams::all_zero() const {
    return alpha == 0 && beta == 0 && beta_prime == 0 && alpha_tilde == 0 &&
           beta_tilde == 0 && beta_tilde_prime == 0;
}

std::string to_string(ModelKind m) {
    switch (m) {
        case ModelKind::en: return "en";
        case ModelKind::gl: return "gl";
        case ModelKind::sl: return "sl";
        case ModelKind::esl: return "esl";
    }
    return "unknown";
}

std::string to_string(ThresholdVariant v) {
    switch (v) {
        case ThresholdVariant::soft: return "soft";
        case ThresholdVariant::zero_recovery: return "zero_recovery";
        case ThresholdVariant::fractional_recovery: return "fractional_recovery";
        case ThresholdVariant::freeze: return "freeze";
    }
    return "unknown";
}

}  // namespace cascade
