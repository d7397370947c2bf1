#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swarmcast/error.hpp"
#include "swarmcast/pipeline.hpp"

namespace {

using namespace swarmcast;

std::vector<Column> columns_from_flag(const std::string& name) {
    if (name == "all") {
        auto cols = all_columns();
        return {cols.begin(), cols.end()};
    }
    return {column_from_string(name)};
}

struct PsoFlags {
    int particles = 0;
    int iters = 0;
    std::uint64_t seed = 0;
    double c1 = 0, c2 = 0, inertia = 0;
    double x_min = 0, x_max = 0, v_max = 0;
    std::string granularity;
};

void add_pso_options(CLI::App* cmd, PsoFlags& f) {
    cmd->add_option("--particles", f.particles, "Swarm size");
    cmd->add_option("--iters", f.iters, "PSO iteration budget");
    cmd->add_option("--seed", f.seed, "PRNG seed");
    cmd->add_option("--c1", f.c1, "Cognitive acceleration constant");
    cmd->add_option("--c2", f.c2, "Social acceleration constant");
    cmd->add_option("--inertia", f.inertia, "Inertia weight");
    cmd->add_option("--xmin", f.x_min, "Lower position bound");
    cmd->add_option("--xmax", f.x_max, "Upper position bound");
    cmd->add_option("--vmax", f.v_max, "Velocity clamp magnitude");
    cmd->add_option("--r-granularity", f.granularity,
                    "Stochastic draw granularity: per_particle or per_dimension");
}

void apply_pso_flags(const CLI::App* cmd, const PsoFlags& f, pso::PsoConfig& config) {
    if (cmd->count("--particles")) config.swarm_size = f.particles;
    if (cmd->count("--iters")) config.max_iterations = f.iters;
    if (cmd->count("--seed")) config.seed = f.seed;
    if (cmd->count("--c1")) config.c1 = f.c1;
    if (cmd->count("--c2")) config.c2 = f.c2;
    if (cmd->count("--inertia")) config.inertia = f.inertia;
    if (cmd->count("--xmin")) config.x_min = f.x_min;
    if (cmd->count("--xmax")) config.x_max = f.x_max;
    if (cmd->count("--vmax")) config.v_max = f.v_max;
    if (cmd->count("--r-granularity"))
        config.r_granularity = pso::granularity_from_string(f.granularity);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PSO-trained neural forecasting for monthly OHLC index data"};
    app.require_subcommand(1);

    // validate
    auto* validate = app.add_subcommand("validate", "Parse a data file and summarize it");
    std::string validate_path;
    validate->add_option("data", validate_path, "CSV with Month,Open,High,Low,Close")
        ->required();

    // train
    auto* train = app.add_subcommand("train", "Train one network per requested column");
    std::string train_config, train_data, train_column, train_out;
    std::string train_norm, train_hidden, train_output_transfer;
    int train_window = 0, train_holdout = 0;
    double train_norm_low = 0, train_norm_high = 0;
    std::vector<int> train_layers;
    PsoFlags train_pso;
    train->add_option("--config", train_config, "JSON config file");
    train->add_option("--data", train_data, "Training data CSV");
    train->add_option("--column", train_column, "open, high, low, close or all");
    train->add_option("--out", train_out, "Output directory");
    train->add_option("--window", train_window, "Input window length");
    train->add_option("--layers", train_layers, "Layer sizes, e.g. 4,8,1")
        ->delimiter(',');
    train->add_option("--norm", train_norm,
                      "Normalization method: symmetric, scaled_span or target_range");
    train->add_option("--norm-low", train_norm_low, "Normalization target low");
    train->add_option("--norm-high", train_norm_high, "Normalization target high");
    train->add_option("--hidden-transfer", train_hidden,
                      "Hidden transfer: linear, threshold or sigmoid");
    train->add_option("--output-transfer", train_output_transfer,
                      "Output transfer: linear, threshold or sigmoid");
    train->add_option("--holdout", train_holdout,
                      "Hold out this many trailing rows for evaluation");
    add_pso_options(train, train_pso);

    // forecast
    auto* forecast = app.add_subcommand("forecast", "Forecast from trained manifests");
    std::vector<std::string> forecast_manifests;
    std::string forecast_config, forecast_out;
    int forecast_horizon = 0;
    bool paper_labels = false;
    forecast->add_option("manifests", forecast_manifests, "Manifest JSON paths")
        ->required();
    forecast->add_option("--config", forecast_config, "JSON config file");
    forecast->add_option("--horizon", forecast_horizon, "Months to forecast");
    forecast->add_option("--out", forecast_out, "Output directory");
    forecast->add_flag("--paper-style-labels", paper_labels,
                       "Label forecast months like 'Jan 15' instead of ISO");

    // bench
    auto* bench = app.add_subcommand("bench", "Optimize a benchmark function");
    std::string bench_function, bench_config, bench_out;
    int bench_dim = 0;
    PsoFlags bench_pso;
    bench->add_option("function", bench_function, "sphere, rosenbrock or rastrigin")
        ->required();
    bench->add_option("--config", bench_config, "JSON config file");
    bench->add_option("--dim", bench_dim, "Search-space dimension");
    bench->add_option("--out", bench_out, "Output directory");
    add_pso_options(bench, bench_pso);

    // error-table
    auto* table = app.add_subcommand("error-table",
                                     "Apply two error offsets to Month,value rows");
    std::string table_path, table_out;
    double err1 = 0, err2 = 0;
    table->add_option("base", table_path, "CSV of Month,value rows")->required();
    table->add_option("--err1", err1, "First offset")->required();
    table->add_option("--err2", err2, "Second offset")->required();
    table->add_option("--out", table_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            run_validate(validate_path, std::cout);
        } else if (*train) {
            RunConfig config;
            if (train->count("--config")) apply_config_file(config, train_config);
            if (train->count("--data")) config.data_path = train_data;
            if (train->count("--column")) config.columns = columns_from_flag(train_column);
            if (train->count("--out")) config.out_dir = train_out;
            if (train->count("--window")) config.train.window = train_window;
            if (train->count("--layers")) config.train.layers = train_layers;
            if (train->count("--norm"))
                config.train.method = norm_method_from_string(train_norm);
            if (train->count("--norm-low")) config.train.norm_low = train_norm_low;
            if (train->count("--norm-high")) config.train.norm_high = train_norm_high;
            if (train->count("--hidden-transfer"))
                config.train.hidden_transfer = nn::transfer_from_string(train_hidden);
            if (train->count("--output-transfer"))
                config.train.output_transfer =
                    nn::transfer_from_string(train_output_transfer);
            if (train->count("--holdout")) config.train.holdout_tail = train_holdout;
            apply_pso_flags(train, train_pso, config.train.pso);
            if (config.data_path.empty())
                throw UsageError("no data file given (use --data or a config file)");
            run_train(config, std::cout, std::cerr);
        } else if (*forecast) {
            RunConfig config;
            if (forecast->count("--config")) apply_config_file(config, forecast_config);
            if (forecast->count("--horizon")) config.horizon = forecast_horizon;
            if (forecast->count("--out")) config.out_dir = forecast_out;
            if (paper_labels) config.paper_style_labels = true;
            std::vector<std::filesystem::path> paths(forecast_manifests.begin(),
                                                     forecast_manifests.end());
            run_forecast(paths, config.horizon, config.out_dir,
                         config.paper_style_labels, std::cout);
        } else if (*bench) {
            RunConfig config;
            if (bench->count("--config")) apply_config_file(config, bench_config);
            pso::PsoConfig pso_config = config.train.pso;
            if (bench->count("--dim")) pso_config.dim = bench_dim;
            apply_pso_flags(bench, bench_pso, pso_config);
            if (bench->count("--out")) config.out_dir = bench_out;
            run_bench(bench_function, pso_config, config.out_dir, std::cout);
        } else if (*table) {
            std::filesystem::path out_dir = table->count("--out")
                                                ? std::filesystem::path(table_out)
                                                : std::filesystem::path(".");
            run_error_table(table_path, err1, err2, out_dir, std::cout);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
