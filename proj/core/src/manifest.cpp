#include "swarmcast/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swarmcast/error.hpp"

namespace swarmcast {
namespace {

using nlohmann::json;

json topology_to_json(const nn::NetworkTopology& t) {
    return {
        {"layers", t.layer_sizes},
        {"hidden_transfer", nn::to_string(t.hidden_transfer)},
        {"output_transfer", nn::to_string(t.output_transfer)},
    };
}

nn::NetworkTopology topology_from_json(const json& j) {
    nn::NetworkTopology t;
    t.layer_sizes = j.at("layers").get<std::vector<int>>();
    t.hidden_transfer = nn::transfer_from_string(j.at("hidden_transfer").get<std::string>());
    t.output_transfer = nn::transfer_from_string(j.at("output_transfer").get<std::string>());
    t.validate();
    return t;
}

json spec_to_json(const NormalizationSpec& s) {
    return {
        {"method", to_string(s.method)},
        {"min", s.min},
        {"max", s.max},
        {"low", s.low},
        {"high", s.high},
    };
}

NormalizationSpec spec_from_json(const json& j) {
    NormalizationSpec s;
    s.method = norm_method_from_string(j.at("method").get<std::string>());
    s.min = j.at("min").get<double>();
    s.max = j.at("max").get<double>();
    s.low = j.at("low").get<double>();
    s.high = j.at("high").get<double>();
    s.validate();
    return s;
}

json pso_to_json(const pso::PsoConfig& p) {
    return {
        {"swarm_size", p.swarm_size},
        {"c1", p.c1},
        {"c2", p.c2},
        {"inertia", p.inertia},
        {"x_min", p.x_min},
        {"x_max", p.x_max},
        {"v_max", p.v_max},
        {"max_iterations", p.max_iterations},
        {"seed", p.seed},
        {"r_granularity", to_string(p.r_granularity)},
        // Recorded so replays agree on the loop semantics.
        {"termination", "fixed budget of max_iterations steps"},
    };
}

pso::PsoConfig pso_from_json(const json& j) {
    pso::PsoConfig p;
    p.swarm_size = j.at("swarm_size").get<int>();
    p.c1 = j.at("c1").get<double>();
    p.c2 = j.at("c2").get<double>();
    p.inertia = j.at("inertia").get<double>();
    p.x_min = j.at("x_min").get<double>();
    p.x_max = j.at("x_max").get<double>();
    p.v_max = j.at("v_max").get<double>();
    p.max_iterations = j.at("max_iterations").get<int>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.r_granularity = pso::granularity_from_string(j.at("r_granularity").get<std::string>());
    return p;
}

json config_to_json(const TrainConfig& c) {
    return {
        {"window", c.window},
        {"layers", c.resolved_layers()},
        {"hidden_transfer", nn::to_string(c.hidden_transfer)},
        {"output_transfer", nn::to_string(c.output_transfer)},
        {"normalization",
         {{"method", to_string(c.method)}, {"low", c.norm_low}, {"high", c.norm_high}}},
        {"holdout_tail", c.holdout_tail},
        {"pso", pso_to_json(c.pso)},
    };
}

TrainConfig config_from_json(const json& j) {
    TrainConfig c;
    c.window = j.at("window").get<int>();
    c.layers = j.at("layers").get<std::vector<int>>();
    c.hidden_transfer = nn::transfer_from_string(j.at("hidden_transfer").get<std::string>());
    c.output_transfer = nn::transfer_from_string(j.at("output_transfer").get<std::string>());
    const json& norm = j.at("normalization");
    c.method = norm_method_from_string(norm.at("method").get<std::string>());
    c.norm_low = norm.at("low").get<double>();
    c.norm_high = norm.at("high").get<double>();
    c.holdout_tail = j.at("holdout_tail").get<int>();
    c.pso = pso_from_json(j.at("pso"));
    return c;
}

} // namespace

std::string manifest_to_string(const RunManifest& manifest) {
    json j{
        {"format_version", 1},
        {"data_path", manifest.data_path},
        {"column", to_string(manifest.model.column)},
        {"month_labels", manifest.month_labels},
        {"series", manifest.series},
        {"training", config_to_json(manifest.config)},
        {"model",
         {{"topology", topology_to_json(manifest.model.topology)},
          {"normalization", spec_to_json(manifest.model.spec)},
          {"window", manifest.model.window},
          {"weights", manifest.model.weights},
          {"training_fitness", manifest.model.training_fitness}}},
    };
    return j.dump(2) + "\n";
}

RunManifest manifest_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
    }
    try {
        RunManifest m;
        m.data_path = j.at("data_path").get<std::string>();
        m.month_labels = j.at("month_labels").get<std::vector<std::string>>();
        m.series = j.at("series").get<std::vector<double>>();
        m.config = config_from_json(j.at("training"));
        const json& model = j.at("model");
        m.model.column = column_from_string(j.at("column").get<std::string>());
        m.model.topology = topology_from_json(model.at("topology"));
        m.model.spec = spec_from_json(model.at("normalization"));
        m.model.window = model.at("window").get<int>();
        m.model.weights = model.at("weights").get<std::vector<double>>();
        m.model.training_fitness = model.at("training_fitness").get<double>();

        if (m.model.weights.size() != nn::dimension(m.model.topology))
            throw ConfigError("manifest weights length " +
                              std::to_string(m.model.weights.size()) +
                              " does not fit the topology (needs " +
                              std::to_string(nn::dimension(m.model.topology)) + ")");
        if (m.series.empty())
            throw ConfigError("manifest series is empty");
        if (m.month_labels.size() != m.series.size())
            throw ConfigError("manifest has " + std::to_string(m.month_labels.size()) +
                              " month labels for " + std::to_string(m.series.size()) +
                              " series values");
        m.config.validate();
        return m;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("manifest is missing or mistypes a field: ") +
                          e.what());
    }
}

void save_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write manifest to '" + path.string() + "'");
    out << manifest_to_string(manifest);
    if (!out)
        throw ConfigError("failed while writing manifest to '" + path.string() + "'");
}

RunManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open manifest '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return manifest_from_string(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

} // namespace swarmcast
