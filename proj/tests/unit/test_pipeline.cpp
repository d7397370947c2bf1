#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "swarmcast/error.hpp"
#include "swarmcast/pipeline.hpp"

using namespace swarmcast;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::size_t count_substr(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (auto pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

/// Twelve months of well-formed OHLC rows with a gentle trend.
std::string sample_csv() {
    std::string text = "Month,Open,High,Low,Close\n";
    double open = 100.0;
    for (int m = 1; m <= 12; ++m) {
        double close = open + ((m % 3) - 1) * 4.0 + 2.0;
        double high = std::max(open, close) + 3.0;
        double low = std::min(open, close) - 3.0;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "2012-%02d,%.2f,%.2f,%.2f,%.2f\n", m, open,
                      high, low, close);
        text += buf;
        open = close;
    }
    return text;
}

RunConfig quick_run_config(const fs::path& data, const fs::path& out_dir) {
    RunConfig config;
    config.data_path = data.string();
    config.out_dir = out_dir;
    config.train.window = 2;
    config.train.layers = {2, 3, 1};
    config.train.pso.swarm_size = 10;
    config.train.pso.max_iterations = 20;
    config.train.pso.seed = 5;
    config.horizon = 3;
    return config;
}

} // namespace

TEST_CASE("config files overlay only the keys they set") {
    TempDir dir("swarmcast_test_config");
    fs::path cfg = dir.path / "run.json";
    write_file(cfg, R"({
        "data": {"path": "prices.csv", "column": ["open", "close"], "window": 6},
        "network": {"layers": [6, 10, 1], "hidden_transfer": "threshold"},
        "normalization": {"method": "target_range", "low": 0.2},
        "pso": {"swarm_size": 50, "inertia": 0.729, "seed": 99},
        "forecast": {"horizon": 7},
        "output": {"dir": "out", "paper_style_labels": true}
    })");

    RunConfig config;
    apply_config_file(config, cfg);
    CHECK(config.data_path == "prices.csv");
    CHECK(config.columns == std::vector<Column>{Column::open, Column::close});
    CHECK(config.train.window == 6);
    CHECK(config.train.layers == std::vector<int>{6, 10, 1});
    CHECK(config.train.hidden_transfer == nn::Transfer::threshold);
    CHECK(config.train.output_transfer == nn::Transfer::linear); // untouched
    CHECK(config.train.method == NormMethod::target_range);
    CHECK(config.train.norm_low == 0.2);
    CHECK(config.train.norm_high == 0.9); // untouched
    CHECK(config.train.pso.swarm_size == 50);
    CHECK(config.train.pso.inertia == 0.729);
    CHECK(config.train.pso.seed == 99);
    CHECK(config.train.pso.c1 == 1.4962); // untouched
    CHECK(config.horizon == 7);
    CHECK(config.out_dir == fs::path("out"));
    CHECK(config.paper_style_labels);
}

TEST_CASE("config file mistakes are loud") {
    TempDir dir("swarmcast_test_config_bad");
    RunConfig config;

    fs::path missing = dir.path / "nope.json";
    CHECK_THROWS_AS(apply_config_file(config, missing), ConfigError);

    fs::path invalid = dir.path / "invalid.json";
    write_file(invalid, "{broken");
    CHECK_THROWS_AS(apply_config_file(config, invalid), ConfigError);

    fs::path typo = dir.path / "typo.json";
    write_file(typo, R"({"pso": {"swarmsize": 50}})");
    CHECK_THROWS_AS(apply_config_file(config, typo), ConfigError);

    fs::path stray = dir.path / "stray.json";
    write_file(stray, R"({"dataset": {"path": "x.csv"}})");
    CHECK_THROWS_AS(apply_config_file(config, stray), ConfigError);

    fs::path dup = dir.path / "dup.json";
    write_file(dup, R"({"data": {"column": ["open", "open"]}})");
    CHECK_THROWS_AS(apply_config_file(config, dup), ConfigError);
}

TEST_CASE("column 'all' expands in order") {
    TempDir dir("swarmcast_test_config_all");
    fs::path cfg = dir.path / "run.json";
    write_file(cfg, R"({"data": {"column": "all"}})");
    RunConfig config;
    apply_config_file(config, cfg);
    CHECK(config.columns == std::vector<Column>{Column::open, Column::high, Column::low,
                                                Column::close});
}

TEST_CASE("validate prints a dataset summary") {
    TempDir dir("swarmcast_test_validate");
    fs::path data = dir.path / "prices.csv";
    write_file(data, sample_csv());

    std::ostringstream out;
    run_validate(data, out);
    std::string text = out.str();
    CHECK(text.find("12 records, 2012-01..2012-12") != std::string::npos);
    CHECK(text.find("open: min ") != std::string::npos);
    CHECK(text.find("close: min ") != std::string::npos);
    CHECK(text.find("warning:") == std::string::npos);
}

TEST_CASE("error tables apply both offsets to every row") {
    TempDir dir("swarmcast_test_errtab");
    fs::path base = dir.path / "base.csv";
    write_file(base,
               "Month,value\n"
               "Jan 15,20390.19\n"
               "Feb 15,20191.67\n");

    std::ostringstream out;
    fs::path table = run_error_table(base, 0.4369, 0.3480, dir.path, out);
    CHECK(read_file(table) ==
          "Month,value_with_err_1,value_with_err_2,base\n"
          "Jan 15,20390.62,20390.53,20390.19\n"
          "Feb 15,20192.10,20192.01,20191.67\n");

    std::ostringstream out2;
    fs::path same = run_error_table(base, 0.0, 0.0, dir.path, out2);
    CHECK(read_file(same) ==
          "Month,value_with_err_1,value_with_err_2,base\n"
          "Jan 15,20390.19,20390.19,20390.19\n"
          "Feb 15,20191.67,20191.67,20191.67\n");
}

TEST_CASE("error table input validation") {
    TempDir dir("swarmcast_test_errtab_bad");
    std::ostringstream out;

    CHECK_THROWS_AS(run_error_table(dir.path / "nope.csv", 0.1, 0.2, dir.path, out),
                    CsvError);

    fs::path headers_only = dir.path / "empty.csv";
    write_file(headers_only, "Month,value\n");
    CHECK_THROWS_AS(run_error_table(headers_only, 0.1, 0.2, dir.path, out), CsvError);

    fs::path no_comma = dir.path / "nocomma.csv";
    write_file(no_comma, "Month,value\nJan 15\n");
    CHECK_THROWS_AS(run_error_table(no_comma, 0.1, 0.2, dir.path, out), CsvError);

    fs::path bad_value = dir.path / "badvalue.csv";
    write_file(bad_value, "Month,value\nJan 15,lots\n");
    CHECK_THROWS_AS(run_error_table(bad_value, 0.1, 0.2, dir.path, out), CsvError);
}

TEST_CASE("train writes a manifest and a history per column") {
    TempDir dir("swarmcast_test_train");
    fs::path data = dir.path / "prices.csv";
    write_file(data, sample_csv());
    RunConfig config = quick_run_config(data, dir.path / "out");

    std::ostringstream out, err;
    auto manifests = run_train(config, out, err);
    REQUIRE(manifests.size() == 1);
    CHECK(manifests[0].filename() == "manifest_open.json");
    CHECK(fs::exists(manifests[0]));
    CHECK(err.str().empty());
    CHECK(out.str().find("open: training fitness ") != std::string::npos);

    std::string history = read_file(dir.path / "out" / "history_open.csv");
    CHECK(history.rfind("iteration,gbest_fitness\n", 0) == 0);
    // header plus one row per recorded best: init state and 20 iterations
    CHECK(std::count(history.begin(), history.end(), '\n') == 22);

    RunManifest manifest = load_manifest(manifests[0]);
    CHECK(manifest.series.size() == 12);
    CHECK(manifest.model.column == Column::open);
    CHECK(manifest.config.pso.seed == 5);
}

TEST_CASE("forecast extends the calendar and is reproducible") {
    TempDir dir("swarmcast_test_forecast");
    fs::path data = dir.path / "prices.csv";
    write_file(data, sample_csv());
    RunConfig config = quick_run_config(data, dir.path / "out");

    std::ostringstream sink, sink2;
    auto manifests = run_train(config, sink, sink2);

    std::ostringstream out;
    fs::path report = run_forecast(manifests, 3, dir.path / "out", false, out);
    std::string text = read_file(report);

    CHECK(text.rfind("Month,Open,forecast\n", 0) == 0);
    CHECK(text.find("\n2012-01,") != std::string::npos);
    CHECK(text.find("\n2013-01,") != std::string::npos);
    CHECK(text.find("\n2013-03,") != std::string::npos);
    CHECK(text.find("2013-04") == std::string::npos);
    // 1 header + 12 historical rows + 3 forecast rows
    CHECK(std::count(text.begin(), text.end(), '\n') == 16);
    CHECK(count_substr(text, ",0\n") == 12);
    CHECK(count_substr(text, ",1\n") == 3);

    std::ostringstream again;
    fs::path report2 = run_forecast(manifests, 3, dir.path / "out2", false, again);
    CHECK(read_file(report2) == text);

    std::ostringstream styled;
    fs::path paper = run_forecast(manifests, 2, dir.path / "out3", true, styled);
    std::string paper_text = read_file(paper);
    CHECK(paper_text.find("\nJan 13,") != std::string::npos);
    CHECK(paper_text.find("\nFeb 13,") != std::string::npos);
}

TEST_CASE("forecast rejects conflicting manifests") {
    TempDir dir("swarmcast_test_forecast_bad");
    fs::path data = dir.path / "prices.csv";
    write_file(data, sample_csv());
    RunConfig config = quick_run_config(data, dir.path / "out");

    std::ostringstream sink, sink2;
    auto manifests = run_train(config, sink, sink2);
    fs::path copy = dir.path / "out" / "manifest_copy.json";
    fs::copy_file(manifests[0], copy);

    std::ostringstream out;
    std::vector<fs::path> duplicated{manifests[0], copy};
    CHECK_THROWS_AS(run_forecast(duplicated, 3, dir.path / "out", false, out),
                    UsageError);
    CHECK_THROWS_AS(run_forecast({}, 3, dir.path / "out", false, out), UsageError);
    CHECK_THROWS_AS(run_forecast(manifests, 0, dir.path / "out", false, out),
                    UsageError);
}

TEST_CASE("forecast needs continuable month labels") {
    TempDir dir("swarmcast_test_forecast_labels");
    fs::path data = dir.path / "prices.csv";
    write_file(data,
               "Month,Open,High,Low,Close\n"
               "q1,100.00,110.00,90.00,105.00\n"
               "q2,105.00,115.00,95.00,102.00\n"
               "q3,102.00,112.00,92.00,108.00\n"
               "q4,108.00,118.00,98.00,104.00\n"
               "q5,104.00,114.00,94.00,106.00\n");
    RunConfig config = quick_run_config(data, dir.path / "out");

    std::ostringstream sink, sink2, out;
    auto manifests = run_train(config, sink, sink2);
    CHECK_THROWS_AS(run_forecast(manifests, 2, dir.path / "out", false, out),
                    UsageError);
}

TEST_CASE("bench writes a convergence history") {
    TempDir dir("swarmcast_test_bench");
    pso::PsoConfig config;
    config.dim = 3;
    config.swarm_size = 8;
    config.max_iterations = 15;
    config.seed = 2;

    std::ostringstream out;
    fs::path path = run_bench("sphere", config, dir.path, out);
    CHECK(path.filename() == "bench_sphere.csv");
    std::string text = read_file(path);
    CHECK(text.rfind("iteration,gbest_fitness\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 17);
    CHECK(out.str().find("sphere: gbest fitness ") != std::string::npos);

    CHECK_THROWS_AS(run_bench("ackley", config, dir.path, out), UsageError);
}
