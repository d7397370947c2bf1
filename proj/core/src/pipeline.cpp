#include "swarmcast/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "swarmcast/error.hpp"
#include "swarmcast/months.hpp"

namespace swarmcast {
namespace {

using nlohmann::json;

std::string format_price(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

const char* column_header(Column c) {
    switch (c) {
        case Column::open: return "Open";
        case Column::high: return "High";
        case Column::low: return "Low";
        case Column::close: return "Close";
    }
    throw UsageError("unknown column enum value");
}

int column_rank(Column c) { return static_cast<int>(c); }

void require_keys(const json& section, const char* name,
                  std::initializer_list<const char*> allowed) {
    for (const auto& item : section.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return item.key() == k;
            }) == allowed.end())
            throw ConfigError(std::string("config section '") + name +
                              "' has unknown key '" + item.key() + "'");
    }
}

std::vector<Column> parse_columns(const json& value) {
    std::vector<Column> columns;
    auto add = [&columns](std::string_view name) {
        if (name == "all") {
            for (Column c : all_columns()) columns.push_back(c);
            return;
        }
        columns.push_back(column_from_string(name));
    };
    if (value.is_string()) {
        add(value.get<std::string>());
    } else if (value.is_array()) {
        for (const auto& v : value) add(v.get<std::string>());
    } else {
        throw ConfigError("config key 'column' must be a string or an array of strings");
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
        for (std::size_t k = i + 1; k < columns.size(); ++k)
            if (columns[i] == columns[k])
                throw ConfigError("config requests column '" + to_string(columns[i]) +
                                  "' twice");
    return columns;
}

std::filesystem::path write_history(const std::filesystem::path& path,
                                    const std::vector<double>& history) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write history to '" + path.string() + "'");
    out << "iteration,gbest_fitness\n";
    for (std::size_t t = 0; t < history.size(); ++t)
        out << t << ',' << format_full(history[t]) << '\n';
    return path;
}

void ensure_out_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory '" + dir.string() + "': " +
                          ec.message());
}

} // namespace

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config file '" + path.string() + "' is not valid JSON: " +
                          e.what());
    }

    require_keys(j, "(top level)",
                 {"data", "network", "normalization", "pso", "forecast", "output"});

    if (j.contains("data")) {
        const json& data = j.at("data");
        require_keys(data, "data", {"path", "column", "window", "holdout_tail"});
        if (data.contains("path")) config.data_path = data.at("path").get<std::string>();
        if (data.contains("column")) config.columns = parse_columns(data.at("column"));
        if (data.contains("window")) config.train.window = data.at("window").get<int>();
        if (data.contains("holdout_tail"))
            config.train.holdout_tail = data.at("holdout_tail").get<int>();
    }
    if (j.contains("network")) {
        const json& net = j.at("network");
        require_keys(net, "network", {"layers", "hidden_transfer", "output_transfer"});
        if (net.contains("layers"))
            config.train.layers = net.at("layers").get<std::vector<int>>();
        if (net.contains("hidden_transfer"))
            config.train.hidden_transfer =
                nn::transfer_from_string(net.at("hidden_transfer").get<std::string>());
        if (net.contains("output_transfer"))
            config.train.output_transfer =
                nn::transfer_from_string(net.at("output_transfer").get<std::string>());
    }
    if (j.contains("normalization")) {
        const json& norm = j.at("normalization");
        require_keys(norm, "normalization", {"method", "low", "high"});
        if (norm.contains("method"))
            config.train.method =
                norm_method_from_string(norm.at("method").get<std::string>());
        if (norm.contains("low")) config.train.norm_low = norm.at("low").get<double>();
        if (norm.contains("high")) config.train.norm_high = norm.at("high").get<double>();
    }
    if (j.contains("pso")) {
        const json& p = j.at("pso");
        require_keys(p, "pso",
                     {"swarm_size", "c1", "c2", "inertia", "x_min", "x_max", "v_max",
                      "max_iterations", "seed", "r_granularity"});
        pso::PsoConfig& pc = config.train.pso;
        if (p.contains("swarm_size")) pc.swarm_size = p.at("swarm_size").get<int>();
        if (p.contains("c1")) pc.c1 = p.at("c1").get<double>();
        if (p.contains("c2")) pc.c2 = p.at("c2").get<double>();
        if (p.contains("inertia")) pc.inertia = p.at("inertia").get<double>();
        if (p.contains("x_min")) pc.x_min = p.at("x_min").get<double>();
        if (p.contains("x_max")) pc.x_max = p.at("x_max").get<double>();
        if (p.contains("v_max")) pc.v_max = p.at("v_max").get<double>();
        if (p.contains("max_iterations"))
            pc.max_iterations = p.at("max_iterations").get<int>();
        if (p.contains("seed")) pc.seed = p.at("seed").get<std::uint64_t>();
        if (p.contains("r_granularity"))
            pc.r_granularity =
                pso::granularity_from_string(p.at("r_granularity").get<std::string>());
    }
    if (j.contains("forecast")) {
        const json& f = j.at("forecast");
        require_keys(f, "forecast", {"horizon"});
        if (f.contains("horizon")) config.horizon = f.at("horizon").get<int>();
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        require_keys(o, "output", {"dir", "paper_style_labels"});
        if (o.contains("dir"))
            config.out_dir = std::filesystem::path(o.at("dir").get<std::string>());
        if (o.contains("paper_style_labels"))
            config.paper_style_labels = o.at("paper_style_labels").get<bool>();
    }
}

void run_validate(const std::filesystem::path& data_path, std::ostream& out) {
    MarketDataset dataset = load_csv(data_path);
    out << dataset.records.size() << " records, " << dataset.records.front().month
        << ".." << dataset.records.back().month << '\n';
    for (Column c : all_columns()) {
        auto series = extract_column(dataset, c);
        auto [lo, hi] = std::minmax_element(series.begin(), series.end());
        out << to_string(c) << ": min " << format_price(*lo) << " max "
            << format_price(*hi) << '\n';
    }
    for (const std::string& w : dataset.warnings) out << "warning: " << w << '\n';
}

std::vector<std::filesystem::path> run_train(const RunConfig& config,
                                             std::ostream& out,
                                             std::ostream& err) {
    if (config.columns.empty())
        throw UsageError("no columns requested");
    MarketDataset dataset = load_csv(config.data_path);
    for (const std::string& w : dataset.warnings) err << "warning: " << w << '\n';
    ensure_out_dir(config.out_dir);

    std::vector<std::filesystem::path> manifest_paths;
    for (Column column : config.columns) {
        TrainResult result = train(dataset, column, config.train);

        RunManifest manifest;
        manifest.data_path = config.data_path;
        manifest.config = config.train;
        manifest.series = extract_column(dataset, column);
        manifest.month_labels.reserve(dataset.records.size());
        for (const auto& rec : dataset.records)
            manifest.month_labels.push_back(rec.month);
        manifest.model = result.model;

        auto manifest_path =
            config.out_dir / ("manifest_" + to_string(column) + ".json");
        save_manifest(manifest, manifest_path);
        write_history(config.out_dir / ("history_" + to_string(column) + ".csv"),
                      result.history);

        out << to_string(column) << ": training fitness "
            << format_full(result.model.training_fitness) << " -> "
            << manifest_path.filename().string() << '\n';
        manifest_paths.push_back(std::move(manifest_path));
    }
    return manifest_paths;
}

std::filesystem::path run_forecast(const std::vector<std::filesystem::path>& manifest_paths,
                                   int horizon,
                                   const std::filesystem::path& out_dir,
                                   bool paper_style_labels,
                                   std::ostream& out) {
    if (manifest_paths.empty())
        throw UsageError("at least one manifest is required");
    if (horizon < 1)
        throw UsageError("horizon must be at least 1, got " + std::to_string(horizon));

    std::vector<RunManifest> manifests;
    manifests.reserve(manifest_paths.size());
    for (const auto& path : manifest_paths)
        manifests.push_back(load_manifest(path));

    std::sort(manifests.begin(), manifests.end(),
              [](const RunManifest& a, const RunManifest& b) {
                  return column_rank(a.model.column) < column_rank(b.model.column);
              });
    for (std::size_t i = 0; i + 1 < manifests.size(); ++i) {
        if (manifests[i].model.column == manifests[i + 1].model.column)
            throw UsageError("two manifests describe column '" +
                             to_string(manifests[i].model.column) + "'");
        if (manifests[i].month_labels != manifests[i + 1].month_labels)
            throw UsageError("manifests disagree on the historical months");
    }

    const std::vector<std::string>& labels = manifests.front().month_labels;
    auto last = parse_month_label(labels.back());
    if (!last)
        throw UsageError("cannot continue month labels after '" + labels.back() + "'");

    std::vector<ForecastReport> reports;
    reports.reserve(manifests.size());
    for (const RunManifest& m : manifests) {
        reports.push_back(
            make_report(m.model, m.series, horizon, m.config.holdout_tail));
        if (reports.back().holdout_metrics) {
            const Metrics& metrics = *reports.back().holdout_metrics;
            out << to_string(m.model.column) << " holdout: mse "
                << format_full(metrics.mse) << " rmse " << format_full(metrics.rmse)
                << " mape " << format_full(metrics.mape) << "%\n";
        }
    }

    ensure_out_dir(out_dir);
    auto report_path = out_dir / "forecast.csv";
    std::ofstream csv(report_path, std::ios::binary);
    if (!csv)
        throw ConfigError("cannot write forecast to '" + report_path.string() + "'");

    csv << "Month";
    for (const RunManifest& m : manifests) csv << ',' << column_header(m.model.column);
    csv << ",forecast\n";
    for (std::size_t row = 0; row < labels.size(); ++row) {
        csv << labels[row];
        for (const RunManifest& m : manifests) csv << ',' << format_price(m.series[row]);
        csv << ",0\n";
    }
    for (int h = 0; h < horizon; ++h) {
        MonthDate date = add_months(*last, h + 1);
        csv << (paper_style_labels ? format_paper(date) : format_iso(date));
        for (const ForecastReport& r : reports)
            csv << ',' << format_price(r.predictions[static_cast<std::size_t>(h)]);
        csv << ",1\n";
    }
    csv.flush();
    if (!csv)
        throw ConfigError("failed while writing '" + report_path.string() + "'");

    out << "wrote " << report_path.string() << " (" << labels.size()
        << " historical rows, " << horizon << " forecast rows)\n";
    return report_path;
}

std::filesystem::path run_bench(std::string_view function,
                                const pso::PsoConfig& config,
                                const std::filesystem::path& out_dir,
                                std::ostream& out) {
    pso::FitnessFn fitness = pso::benchmark_fitness(function);
    pso::OptimizeResult result = pso::optimize(config, fitness);
    ensure_out_dir(out_dir);
    auto path = write_history(
        out_dir / ("bench_" + std::string(function) + ".csv"), result.history);
    out << function << ": gbest fitness " << format_full(result.best_fitness)
        << " after " << config.max_iterations << " iterations -> "
        << path.filename().string() << '\n';
    return path;
}

std::filesystem::path run_error_table(const std::filesystem::path& base_csv,
                                      double err1,
                                      double err2,
                                      const std::filesystem::path& out_dir,
                                      std::ostream& out) {
    std::ifstream in(base_csv);
    if (!in)
        throw CsvError("cannot open '" + base_csv.string() + "'");

    std::vector<std::pair<std::string, double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw CsvError(base_csv.string() + ": line " + std::to_string(line_no) +
                           ": expected Month,value");
        std::string month = line.substr(0, comma);
        std::string field = line.substr(comma + 1);
        double value = 0.0;
        auto [ptr, ec] =
            std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc{} || ptr != field.data() + field.size()) {
            if (line_no == 1) continue; // header row
            throw CsvError(base_csv.string() + ": line " + std::to_string(line_no) +
                           ": cannot parse value '" + field + "'");
        }
        rows.emplace_back(std::move(month), value);
    }
    if (rows.empty())
        throw CsvError(base_csv.string() + ": no Month,value rows found");

    ensure_out_dir(out_dir);
    auto path = out_dir / "error_table.csv";
    std::ofstream csv(path, std::ios::binary);
    if (!csv)
        throw ConfigError("cannot write '" + path.string() + "'");
    csv << "Month,value_with_err_1,value_with_err_2,base\n";
    for (const auto& [month, base] : rows) {
        csv << month << ',' << format_price(apply_error_offset(base, err1)) << ','
            << format_price(apply_error_offset(base, err2)) << ','
            << format_price(base) << '\n';
    }
    csv.flush();
    if (!csv)
        throw ConfigError("failed while writing '" + path.string() + "'");

    out << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
    return path;
}

} // namespace swarmcast
