#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swarmcast::nn {

enum class Transfer { linear, threshold, sigmoid };

std::string to_string(Transfer t);
Transfer transfer_from_string(std::string_view name); // throws UsageError

/// Applies one transfer function. threshold maps x >= 0 to 1, else 0;
/// sigmoid is 1 / (1 + e^-x).
double transfer(Transfer t, double x);

/// Layer sizes from input to output plus the transfer used by hidden layers
/// and the one used by the output layer. A two-layer net has no hidden
/// layers, so only output_transfer applies.
struct NetworkTopology {
    std::vector<int> layer_sizes;
    Transfer hidden_transfer = Transfer::sigmoid;
    Transfer output_transfer = Transfer::linear;

    void validate() const; // throws ConfigError
    int inputs() const { return layer_sizes.front(); }
    int outputs() const { return layer_sizes.back(); }
};

/// Number of weights a topology needs: sum over consecutive layer pairs of
/// (source_size + 1) * destination_size, the +1 being the bias.
std::size_t dimension(const NetworkTopology& topology);

/// Read-only view of one layer pair inside a flat weight vector. Layout is
/// destination-major: destination unit 0's source weights in source order,
/// then its bias, then destination unit 1, and so on.
class LayerView {
public:
    LayerView(std::span<const double> data, int sources, int destinations);

    double weight(int dst, int src) const;
    double bias(int dst) const;
    int sources() const { return sources_; }
    int destinations() const { return destinations_; }
    std::span<const double> raw() const { return data_; }

private:
    std::span<const double> data_;
    int sources_ = 0;
    int destinations_ = 0;
};

/// Splits a flat weight vector into per-layer views. The vector length must
/// equal dimension(topology) (ShapeError otherwise).
std::vector<LayerView> unflatten(const NetworkTopology& topology,
                                 std::span<const double> weights);

/// Concatenates layer views back into a flat vector. Inverse of unflatten.
std::vector<double> flatten(std::span<const LayerView> layers);

/// Reusable activation buffers so repeated forward passes stay allocation-free.
struct ForwardScratch {
    std::vector<double> current;
    std::vector<double> next;
};

/// Runs the network: each layer applies its affine map then its transfer
/// function. Throws ShapeError when input or weight lengths do not match the
/// topology. The returned span aliases `scratch` and stays valid until the
/// next forward call with the same scratch.
std::span<const double> forward(const NetworkTopology& topology,
                                std::span<const double> weights,
                                std::span<const double> input,
                                ForwardScratch& scratch);

/// Convenience overload that allocates its own buffers.
std::vector<double> forward(const NetworkTopology& topology,
                            std::span<const double> weights,
                            std::span<const double> input);

} // namespace swarmcast::nn
