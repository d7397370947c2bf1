#pragma once

#include <span>
#include <string>
#include <string_view>

namespace swarmcast {

enum class NormMethod {
    symmetric,    // x = (2y - (max + min)) / (max - min), range [-1, 1]
    scaled_span,  // x = ((high - low) / (max - min)) * (y - min)
    target_range, // x = low + (y - min) * (high - low) / (max - min)
};

std::string to_string(NormMethod method);
NormMethod norm_method_from_string(std::string_view name); // throws UsageError

/// Frozen parameters of a fitted normalization. `min`/`max` come from the
/// training series; `low`/`high` are the caller's target bounds and are
/// ignored by the symmetric method.
struct NormalizationSpec {
    NormMethod method = NormMethod::symmetric;
    double min = 0.0;
    double max = 0.0;
    double low = 0.0;
    double high = 0.0;

    void validate() const; // throws ConfigError
};

/// Scans the series for min/max and freezes them together with the method
/// and target bounds. Throws NumericError when the series is empty or
/// constant (max == min leaves every formula undefined).
NormalizationSpec fit_normalization(std::span<const double> series,
                                    NormMethod method,
                                    double low,
                                    double high);

double normalize(const NormalizationSpec& spec, double y);
double denormalize(const NormalizationSpec& spec, double x);

} // namespace swarmcast
