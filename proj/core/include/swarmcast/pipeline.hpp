#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "swarmcast/forecaster.hpp"
#include "swarmcast/manifest.hpp"

namespace swarmcast {

/// One run's worth of command configuration. Defaults mirror the reference
/// setup: window 4, topology [4, 8, 1], symmetric normalization, 30
/// particles, c1 = c2 = 1.4962, inertia 1.0, 1000 iterations, horizon 4.
struct RunConfig {
    std::string data_path;
    std::vector<Column> columns = {Column::open};
    TrainConfig train;
    int horizon = 4;
    std::filesystem::path out_dir = ".";
    bool paper_style_labels = false;
};

/// Overlays a JSON config file (sections: data, network, normalization, pso,
/// forecast, output; all keys optional) onto `config`. Unknown keys inside a
/// known section are ConfigErrors so typos do not pass silently.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Prints record count, label span, per-column min/max and any warnings.
void run_validate(const std::filesystem::path& data_path, std::ostream& out);

/// Trains every requested column and writes manifest_<column>.json plus
/// history_<column>.csv into out_dir. Progress goes to `out`, dataset
/// warnings to `err`. Returns the manifest paths in column order.
std::vector<std::filesystem::path> run_train(const RunConfig& config,
                                             std::ostream& out,
                                             std::ostream& err);

/// Loads one manifest per column and writes forecast.csv: every historical
/// row, then `horizon` forecast rows flagged by the final column. Month
/// labels continue the calendar, ISO "YYYY-MM" by default or "Jan 15" style
/// when paper_style_labels is set.
std::filesystem::path run_forecast(const std::vector<std::filesystem::path>& manifest_paths,
                                   int horizon,
                                   const std::filesystem::path& out_dir,
                                   bool paper_style_labels,
                                   std::ostream& out);

/// Optimizes a named benchmark function and writes bench_<name>.csv with the
/// convergence history.
std::filesystem::path run_bench(std::string_view function,
                                const pso::PsoConfig& config,
                                const std::filesystem::path& out_dir,
                                std::ostream& out);

/// Reads Month,value rows and writes error_table.csv with both offsets
/// applied: Month,value_with_err_1,value_with_err_2,base.
std::filesystem::path run_error_table(const std::filesystem::path& base_csv,
                                      double err1,
                                      double err2,
                                      const std::filesystem::path& out_dir,
                                      std::ostream& out);

} // namespace swarmcast
