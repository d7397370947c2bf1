#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>

#include "swarmcast/error.hpp"
#include "swarmcast/manifest.hpp"

using namespace swarmcast;

namespace {

RunManifest sample_manifest() {
    RunManifest m;
    m.data_path = "data/index_monthly.csv";
    m.month_labels = {"2011-06", "2011-07", "2011-08"};
    m.series = {19859.22, 19352.48, 19443.29};

    m.config.window = 2;
    m.config.layers = {2, 3, 1};
    m.config.pso.seed = 42;
    m.config.pso.max_iterations = 50;

    m.model.topology = {{2, 3, 1}, nn::Transfer::sigmoid, nn::Transfer::linear};
    m.model.spec = {NormMethod::symmetric, 19352.48, 19859.22, 0.1, 0.9};
    m.model.window = 2;
    m.model.column = Column::open;
    m.model.training_fitness = 1.25e-3;
    m.model.weights.assign(nn::dimension(m.model.topology), 0.0);
    double w = -5.12;
    for (double& x : m.model.weights) {
        x = w;
        w += 1.0 / 3.0; // awkward binary values should survive the roundtrip
    }
    return m;
}

} // namespace

TEST_CASE("manifest text roundtrips byte for byte") {
    RunManifest original = sample_manifest();
    std::string text = manifest_to_string(original);
    RunManifest parsed = manifest_from_string(text);
    CHECK(manifest_to_string(parsed) == text);

    CHECK(parsed.data_path == original.data_path);
    CHECK(parsed.month_labels == original.month_labels);
    CHECK(parsed.series == original.series);
    CHECK(parsed.model.weights == original.model.weights);
    CHECK(parsed.model.training_fitness == original.model.training_fitness);
    CHECK(parsed.model.window == original.model.window);
    CHECK(parsed.model.column == original.model.column);
    CHECK(parsed.model.spec.min == original.model.spec.min);
    CHECK(parsed.model.spec.max == original.model.spec.max);
    CHECK(parsed.model.topology.layer_sizes == original.model.topology.layer_sizes);
    CHECK(parsed.config.window == original.config.window);
    CHECK(parsed.config.layers == original.config.layers);
    CHECK(parsed.config.pso.seed == original.config.pso.seed);
    CHECK(parsed.config.pso.max_iterations == original.config.pso.max_iterations);
}

TEST_CASE("default layers serialize resolved") {
    RunManifest m = sample_manifest();
    m.config.window = 4;
    m.config.layers.clear();
    std::string text = manifest_to_string(m);
    RunManifest parsed = manifest_from_string(text);
    CHECK(parsed.config.layers == std::vector<int>{4, 8, 1});
    CHECK(manifest_to_string(parsed) == text);
}

TEST_CASE("manifest rejects malformed input") {
    CHECK_THROWS_AS(manifest_from_string("{nope"), ConfigError);
    CHECK_THROWS_AS(manifest_from_string(""), ConfigError);
    CHECK_THROWS_AS(manifest_from_string("[]"), ConfigError);

    RunManifest good = sample_manifest();
    std::string text = manifest_to_string(good);

    SUBCASE("missing field") {
        std::string broken = text;
        auto pos = broken.find("\"series\"");
        REQUIRE(pos != std::string::npos);
        broken.replace(pos, 8, "\"serieZ\"");
        CHECK_THROWS_AS(manifest_from_string(broken), ConfigError);
    }

    SUBCASE("weights do not fit the topology") {
        RunManifest bad = good;
        bad.model.weights.pop_back();
        CHECK_THROWS_AS(manifest_from_string(manifest_to_string(bad)), ConfigError);
    }

    SUBCASE("label count differs from series length") {
        RunManifest bad = good;
        bad.month_labels.pop_back();
        CHECK_THROWS_AS(manifest_from_string(manifest_to_string(bad)), ConfigError);
    }

    SUBCASE("empty series") {
        RunManifest bad = good;
        bad.series.clear();
        bad.month_labels.clear();
        CHECK_THROWS_AS(manifest_from_string(manifest_to_string(bad)), ConfigError);
    }

    SUBCASE("config fails validation") {
        RunManifest bad = good;
        bad.config.window = 3; // topology expects 2 inputs
        CHECK_THROWS_AS(manifest_from_string(manifest_to_string(bad)), ConfigError);
    }
}

TEST_CASE("manifest files save and load") {
    namespace fs = std::filesystem;
    fs::path path = fs::temp_directory_path() / "swarmcast_manifest_test.json";

    RunManifest m = sample_manifest();
    save_manifest(m, path);
    RunManifest loaded = load_manifest(path);
    CHECK(manifest_to_string(loaded) == manifest_to_string(m));
    fs::remove(path);

    CHECK_THROWS_AS(load_manifest(path), ConfigError);
}
