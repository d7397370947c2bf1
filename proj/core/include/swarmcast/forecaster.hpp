#pragma once

#include <optional>
#include <span>
#include <vector>

#include "swarmcast/market_data.hpp"
#include "swarmcast/neural_net.hpp"
#include "swarmcast/normalize.hpp"
#include "swarmcast/pso.hpp"

namespace swarmcast {

/// Everything train() needs beyond the dataset. `layers` empty means the
/// default [window, 8, 1]. `pso.dim` is derived from the topology, whatever
/// the caller set. `holdout_tail` > 0 reserves that many trailing values for
/// evaluation instead of training.
struct TrainConfig {
    int window = 4;
    std::vector<int> layers;
    nn::Transfer hidden_transfer = nn::Transfer::sigmoid;
    nn::Transfer output_transfer = nn::Transfer::linear;
    NormMethod method = NormMethod::symmetric;
    double norm_low = 0.1;
    double norm_high = 0.9;
    int holdout_tail = 0;
    pso::PsoConfig pso;

    std::vector<int> resolved_layers() const;
    void validate() const; // throws ConfigError
};

/// A trained network plus everything needed to run it on new data.
struct TrainedModel {
    nn::NetworkTopology topology;
    std::vector<double> weights;
    NormalizationSpec spec;
    int window = 0;
    Column column = Column::open;
    double training_fitness = 0.0;
};

struct TrainResult {
    TrainedModel model;
    /// Swarm-best fitness after initialization and after each iteration.
    std::vector<double> history;
};

struct Metrics {
    double mse = 0.0;
    double rmse = 0.0;
    double mape = 0.0;
};

struct ForecastReport {
    Column column = Column::open;
    int horizon = 0;
    std::vector<double> predictions;
    std::optional<Metrics> holdout_metrics;
};

/// Mean squared one-step error of the network described by `position` over
/// the training windows. Throws UsageError for empty windows, ShapeError for
/// a position of the wrong length.
double fitness_mse(std::span<const double> position,
                   const nn::NetworkTopology& topology,
                   std::span<const TrainingWindow> windows);

/// Binds topology and windows into a reusable fitness function.
pso::FitnessFn make_mse_fitness(nn::NetworkTopology topology,
                                std::vector<TrainingWindow> windows);

/// Full training pipeline: extract the column, fit normalization on the
/// training values, normalize, window, then optimize the network weights.
/// Deterministic given config.pso.seed.
TrainResult train(const MarketDataset& dataset, Column column, const TrainConfig& config);

/// Iterated one-step forecasting: normalize the last `window` known or
/// predicted values, run the network, denormalize, append, repeat. Returns
/// the `horizon` appended prices in order.
std::vector<double> forecast_recursive(const TrainedModel& model,
                                       std::span<const double> series,
                                       int horizon);

/// Forecasts `horizon` values past the end of `series`. When holdout_tail is
/// positive the model is assumed to have been trained without those trailing
/// values and they are scored via compute_metrics.
ForecastReport make_report(const TrainedModel& model,
                           std::span<const double> series,
                           int horizon,
                           int holdout_tail = 0);

/// base + error, truncated (toward zero, not rounded) to two decimals.
double apply_error_offset(double base, double error);

/// 100 * (before - after) / before. Throws NumericError when before is not
/// positive.
double error_reduction(double before, double after);

/// Standard mse / rmse / mape (percent). Throws ShapeError on length
/// mismatch or empty input, NumericError when mape hits a zero actual.
Metrics compute_metrics(std::span<const double> predicted,
                        std::span<const double> actual);

/// P(A|B) = pA * pB_given_A / pB. Throws UsageError for inputs outside
/// [0, 1], NumericError when pB is zero or the result exceeds 1.
double bayes_posterior(double pA, double pB, double pB_given_A);

} // namespace swarmcast
