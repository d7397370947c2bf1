#include "swarmcast/normalize.hpp"

#include <algorithm>
#include <cmath>

#include "swarmcast/error.hpp"

namespace swarmcast {

std::string to_string(NormMethod method) {
    switch (method) {
        case NormMethod::symmetric: return "symmetric";
        case NormMethod::scaled_span: return "scaled_span";
        case NormMethod::target_range: return "target_range";
    }
    throw UsageError("unknown normalization method enum value");
}

NormMethod norm_method_from_string(std::string_view name) {
    if (name == "symmetric") return NormMethod::symmetric;
    if (name == "scaled_span") return NormMethod::scaled_span;
    if (name == "target_range") return NormMethod::target_range;
    throw UsageError("unknown normalization method '" + std::string(name) +
                     "' (expected symmetric, scaled_span or target_range)");
}

void NormalizationSpec::validate() const {
    if (!(max > min))
        throw ConfigError("degenerate normalization spec: max must exceed min");
    if (method != NormMethod::symmetric && !(high > low))
        throw ConfigError("degenerate normalization spec: high must exceed low");
}

NormalizationSpec fit_normalization(std::span<const double> series,
                                    NormMethod method,
                                    double low,
                                    double high) {
    if (series.empty())
        throw NumericError("cannot fit normalization to an empty series");
    auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    if (*lo == *hi)
        throw NumericError("cannot fit normalization to a constant series (max == min)");
    NormalizationSpec spec{method, *lo, *hi, low, high};
    spec.validate();
    return spec;
}

// Both directions run through std::lerp so the boundary images are exact:
// lerp(a, b, 0) == a and lerp(a, b, 1) == b by the standard's guarantee,
// which naive x = (2y - (max + min)) / (max - min) style association loses
// to rounding. Each branch is algebraically the formula in its comment.

double normalize(const NormalizationSpec& spec, double y) {
    spec.validate();
    const double t = (y - spec.min) / (spec.max - spec.min);
    switch (spec.method) {
        case NormMethod::symmetric: // (2y - (max + min)) / (max - min)
            return std::lerp(-1.0, 1.0, t);
        case NormMethod::scaled_span: // ((high - low) / (max - min)) * (y - min)
            return std::lerp(0.0, spec.high - spec.low, t);
        case NormMethod::target_range: // low + (y - min)(high - low) / (max - min)
            return std::lerp(spec.low, spec.high, t);
    }
    throw UsageError("unknown normalization method enum value");
}

double denormalize(const NormalizationSpec& spec, double x) {
    spec.validate();
    double t = 0.0;
    switch (spec.method) {
        case NormMethod::symmetric:
            t = (x + 1.0) / 2.0;
            break;
        case NormMethod::scaled_span:
            t = x / (spec.high - spec.low);
            break;
        case NormMethod::target_range:
            t = (x - spec.low) / (spec.high - spec.low);
            break;
    }
    return std::lerp(spec.min, spec.max, t);
}

} // namespace swarmcast
