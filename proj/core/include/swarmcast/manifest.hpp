#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "swarmcast/forecaster.hpp"

namespace swarmcast {

/// Everything one training run produced and everything needed to replay it:
/// the exact configuration (seed included), the training series with its
/// month labels, and the trained model itself.
struct RunManifest {
    std::string data_path;
    TrainConfig config;
    std::vector<std::string> month_labels;
    std::vector<double> series;
    TrainedModel model;
};

/// Serializes to JSON with sorted keys and round-trip-exact numbers, so the
/// same manifest always produces the same bytes.
std::string manifest_to_string(const RunManifest& manifest);

/// Parses and validates a manifest. Throws ConfigError for malformed JSON,
/// missing fields, or values that violate module invariants.
RunManifest manifest_from_string(const std::string& text);

void save_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest load_manifest(const std::filesystem::path& path);

} // namespace swarmcast
