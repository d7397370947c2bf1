#include "swarmcast/neural_net.hpp"

#include <cmath>

#include "swarmcast/error.hpp"

namespace swarmcast::nn {

std::string to_string(Transfer t) {
    switch (t) {
        case Transfer::linear: return "linear";
        case Transfer::threshold: return "threshold";
        case Transfer::sigmoid: return "sigmoid";
    }
    throw UsageError("unknown transfer enum value");
}

Transfer transfer_from_string(std::string_view name) {
    if (name == "linear") return Transfer::linear;
    if (name == "threshold") return Transfer::threshold;
    if (name == "sigmoid") return Transfer::sigmoid;
    throw UsageError("unknown transfer function '" + std::string(name) +
                     "' (expected linear, threshold or sigmoid)");
}

double transfer(Transfer t, double x) {
    switch (t) {
        case Transfer::linear: return x;
        case Transfer::threshold: return x >= 0.0 ? 1.0 : 0.0;
        case Transfer::sigmoid: return 1.0 / (1.0 + std::exp(-x));
    }
    throw UsageError("unknown transfer enum value");
}

void NetworkTopology::validate() const {
    if (layer_sizes.size() < 2)
        throw ConfigError("topology needs at least an input and an output layer");
    for (int size : layer_sizes)
        if (size < 1)
            throw ConfigError("every layer needs at least one unit, got " +
                              std::to_string(size));
}

std::size_t dimension(const NetworkTopology& topology) {
    topology.validate();
    std::size_t total = 0;
    for (std::size_t i = 0; i + 1 < topology.layer_sizes.size(); ++i) {
        auto src = static_cast<std::size_t>(topology.layer_sizes[i]);
        auto dst = static_cast<std::size_t>(topology.layer_sizes[i + 1]);
        total += (src + 1) * dst;
    }
    return total;
}

LayerView::LayerView(std::span<const double> data, int sources, int destinations)
    : data_(data), sources_(sources), destinations_(destinations) {
    if (sources < 1 || destinations < 1)
        throw ShapeError("layer view needs at least one source and one destination");
    auto expected = static_cast<std::size_t>(sources + 1) *
                    static_cast<std::size_t>(destinations);
    if (data.size() != expected)
        throw ShapeError("layer view over " + std::to_string(data.size()) +
                         " values, expected " + std::to_string(expected));
}

double LayerView::weight(int dst, int src) const {
    return data_[static_cast<std::size_t>(dst) * static_cast<std::size_t>(sources_ + 1) +
                 static_cast<std::size_t>(src)];
}

double LayerView::bias(int dst) const {
    return data_[static_cast<std::size_t>(dst) * static_cast<std::size_t>(sources_ + 1) +
                 static_cast<std::size_t>(sources_)];
}

std::vector<LayerView> unflatten(const NetworkTopology& topology,
                                 std::span<const double> weights) {
    if (weights.size() != dimension(topology))
        throw ShapeError("weight vector has " + std::to_string(weights.size()) +
                         " values, topology needs " + std::to_string(dimension(topology)));
    std::vector<LayerView> layers;
    layers.reserve(topology.layer_sizes.size() - 1);
    std::size_t offset = 0;
    for (std::size_t i = 0; i + 1 < topology.layer_sizes.size(); ++i) {
        int src = topology.layer_sizes[i];
        int dst = topology.layer_sizes[i + 1];
        auto count = static_cast<std::size_t>(src + 1) * static_cast<std::size_t>(dst);
        layers.emplace_back(weights.subspan(offset, count), src, dst);
        offset += count;
    }
    return layers;
}

std::vector<double> flatten(std::span<const LayerView> layers) {
    std::vector<double> out;
    std::size_t total = 0;
    for (const auto& layer : layers) total += layer.raw().size();
    out.reserve(total);
    for (const auto& layer : layers)
        out.insert(out.end(), layer.raw().begin(), layer.raw().end());
    return out;
}

std::span<const double> forward(const NetworkTopology& topology,
                                std::span<const double> weights,
                                std::span<const double> input,
                                ForwardScratch& scratch) {
    topology.validate();
    if (input.size() != static_cast<std::size_t>(topology.inputs()))
        throw ShapeError("input has " + std::to_string(input.size()) +
                         " values, network expects " + std::to_string(topology.inputs()));
    if (weights.size() != dimension(topology))
        throw ShapeError("weight vector has " + std::to_string(weights.size()) +
                         " values, topology needs " + std::to_string(dimension(topology)));

    scratch.current.assign(input.begin(), input.end());
    const std::size_t last = topology.layer_sizes.size() - 1;
    std::size_t offset = 0;
    for (std::size_t layer = 1; layer <= last; ++layer) {
        const auto src = static_cast<std::size_t>(topology.layer_sizes[layer - 1]);
        const auto dst = static_cast<std::size_t>(topology.layer_sizes[layer]);
        const Transfer t =
            layer == last ? topology.output_transfer : topology.hidden_transfer;
        scratch.next.resize(dst);
        for (std::size_t d = 0; d < dst; ++d) {
            const double* unit = weights.data() + offset + d * (src + 1);
            double sum = unit[src]; // bias
            for (std::size_t s = 0; s < src; ++s)
                sum += unit[s] * scratch.current[s];
            scratch.next[d] = transfer(t, sum);
        }
        offset += (src + 1) * dst;
        std::swap(scratch.current, scratch.next);
    }
    return scratch.current;
}

std::vector<double> forward(const NetworkTopology& topology,
                            std::span<const double> weights,
                            std::span<const double> input) {
    ForwardScratch scratch;
    auto out = forward(topology, weights, input, scratch);
    return {out.begin(), out.end()};
}

} // namespace swarmcast::nn
