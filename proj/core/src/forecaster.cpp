#include "swarmcast/forecaster.hpp"

#include <cmath>
#include <string>

#include "swarmcast/error.hpp"

namespace swarmcast {

std::vector<int> TrainConfig::resolved_layers() const {
    if (!layers.empty()) return layers;
    return {window, 8, 1};
}

void TrainConfig::validate() const {
    if (window < 1)
        throw ConfigError("window must be at least 1, got " + std::to_string(window));
    if (holdout_tail < 0)
        throw ConfigError("holdout_tail must be non-negative");
    nn::NetworkTopology topology{resolved_layers(), hidden_transfer, output_transfer};
    topology.validate();
    if (topology.inputs() != window)
        throw ConfigError("topology input layer has " + std::to_string(topology.inputs()) +
                          " units but the window is " + std::to_string(window));
    if (topology.outputs() != 1)
        throw ConfigError("topology must end in a single output unit, got " +
                          std::to_string(topology.outputs()));
    if (method != NormMethod::symmetric && !(norm_high > norm_low))
        throw ConfigError("normalization high must exceed low");
}

namespace {

double window_mse(std::span<const double> position,
                  const nn::NetworkTopology& topology,
                  std::span<const TrainingWindow> windows,
                  nn::ForwardScratch& scratch) {
    double sum = 0.0;
    for (const TrainingWindow& w : windows) {
        auto out = nn::forward(topology, position, w.inputs, scratch);
        double diff = out[0] - w.target;
        sum += diff * diff;
    }
    return sum / static_cast<double>(windows.size());
}

} // namespace

double fitness_mse(std::span<const double> position,
                   const nn::NetworkTopology& topology,
                   std::span<const TrainingWindow> windows) {
    if (windows.empty())
        throw UsageError("cannot compute fitness over zero training windows");
    nn::ForwardScratch scratch;
    return window_mse(position, topology, windows, scratch);
}

pso::FitnessFn make_mse_fitness(nn::NetworkTopology topology,
                                std::vector<TrainingWindow> windows) {
    if (windows.empty())
        throw UsageError("cannot compute fitness over zero training windows");
    return [topology = std::move(topology),
            windows = std::move(windows)](std::span<const double> position) {
        thread_local nn::ForwardScratch scratch;
        return window_mse(position, topology, windows, scratch);
    };
}

TrainResult train(const MarketDataset& dataset, Column column, const TrainConfig& config) {
    config.validate();

    std::vector<double> series = extract_column(dataset, column);
    if (config.holdout_tail > 0) {
        if (series.size() <= static_cast<std::size_t>(config.holdout_tail))
            throw UsageError("holdout tail of " + std::to_string(config.holdout_tail) +
                             " leaves no training data");
        series.resize(series.size() - static_cast<std::size_t>(config.holdout_tail));
    }
    if (series.size() < static_cast<std::size_t>(config.window) + 1)
        throw UsageError(to_string(column) + " series too short: need at least " +
                         std::to_string(config.window + 1) + " values, got " +
                         std::to_string(series.size()));

    NormalizationSpec spec =
        fit_normalization(series, config.method, config.norm_low, config.norm_high);
    std::vector<double> normalized(series.size());
    for (std::size_t i = 0; i < series.size(); ++i)
        normalized[i] = normalize(spec, series[i]);

    nn::NetworkTopology topology{config.resolved_layers(), config.hidden_transfer,
                                 config.output_transfer};
    pso::PsoConfig pso_config = config.pso;
    pso_config.dim = static_cast<int>(nn::dimension(topology));

    auto fitness = make_mse_fitness(topology, make_windows(normalized, config.window));
    pso::OptimizeResult best = pso::optimize(pso_config, fitness);

    TrainResult result;
    result.model = TrainedModel{std::move(topology), std::move(best.best_position), spec,
                                config.window, column, best.best_fitness};
    result.history = std::move(best.history);
    return result;
}

std::vector<double> forecast_recursive(const TrainedModel& model,
                                       std::span<const double> series,
                                       int horizon) {
    if (horizon < 1)
        throw UsageError("horizon must be at least 1, got " + std::to_string(horizon));
    const auto window = static_cast<std::size_t>(model.window);
    if (series.size() < window)
        throw ShapeError("series has " + std::to_string(series.size()) +
                         " values, the model needs at least " + std::to_string(window));

    // Only the last `window` values ever feed the network.
    std::vector<double> tail(series.end() - static_cast<std::ptrdiff_t>(window),
                             series.end());
    std::vector<double> input(window);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(horizon));
    nn::ForwardScratch scratch;
    for (int h = 0; h < horizon; ++h) {
        for (std::size_t k = 0; k < window; ++k)
            input[k] = normalize(model.spec, tail[tail.size() - window + k]);
        auto y = nn::forward(model.topology, model.weights, input, scratch);
        double price = denormalize(model.spec, y[0]);
        if (!std::isfinite(price))
            throw NumericError("forecast produced a non-finite value at step " +
                               std::to_string(h + 1));
        tail.push_back(price);
        out.push_back(price);
    }
    return out;
}

ForecastReport make_report(const TrainedModel& model,
                           std::span<const double> series,
                           int horizon,
                           int holdout_tail) {
    if (holdout_tail < 0)
        throw UsageError("holdout tail must be non-negative");
    ForecastReport report;
    report.column = model.column;
    report.horizon = horizon;
    if (holdout_tail > 0) {
        if (series.size() <= static_cast<std::size_t>(holdout_tail))
            throw UsageError("holdout tail covers the whole series");
        auto head = series.first(series.size() - static_cast<std::size_t>(holdout_tail));
        auto predicted = forecast_recursive(model, head, holdout_tail);
        report.holdout_metrics = compute_metrics(
            predicted, series.last(static_cast<std::size_t>(holdout_tail)));
    }
    report.predictions = forecast_recursive(model, series, horizon);
    return report;
}

double apply_error_offset(double base, double error) {
    double scaled = (base + error) * 100.0;
    // Decimal inputs land a hair under their true value in binary; the nudge
    // keeps truncation from eating a whole cent on exact-hundredth sums.
    scaled += std::copysign(1e-7, scaled);
    return std::trunc(scaled) / 100.0;
}

double error_reduction(double before, double after) {
    if (!(before > 0.0))
        throw NumericError("error reduction undefined for a non-positive baseline");
    return 100.0 * (before - after) / before;
}

Metrics compute_metrics(std::span<const double> predicted,
                        std::span<const double> actual) {
    if (predicted.size() != actual.size())
        throw ShapeError("metrics need equal lengths, got " +
                         std::to_string(predicted.size()) + " and " +
                         std::to_string(actual.size()));
    if (predicted.empty())
        throw ShapeError("metrics need at least one value");

    double sq_sum = 0.0;
    double ape_sum = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        double diff = predicted[i] - actual[i];
        sq_sum += diff * diff;
        if (actual[i] == 0.0)
            throw NumericError("mape undefined: actual value at index " +
                               std::to_string(i) + " is zero");
        ape_sum += std::abs(diff / actual[i]);
    }
    Metrics m;
    m.mse = sq_sum / static_cast<double>(predicted.size());
    m.rmse = std::sqrt(m.mse);
    m.mape = 100.0 * ape_sum / static_cast<double>(predicted.size());
    return m;
}

double bayes_posterior(double pA, double pB, double pB_given_A) {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(pA) || !in_unit(pB) || !in_unit(pB_given_A))
        throw UsageError("probabilities must lie in [0, 1]");
    if (pB == 0.0)
        throw NumericError("conditional undefined: P(B) is zero");
    double posterior = pA * pB_given_A / pB;
    if (posterior > 1.0)
        throw NumericError("inconsistent inputs: posterior exceeds 1");
    return posterior;
}

} // namespace swarmcast
