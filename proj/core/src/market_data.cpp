#include "swarmcast/market_data.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "swarmcast/error.hpp"

namespace swarmcast {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(trim(line.substr(start)));
            break;
        }
        fields.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return fields;
}

double parse_price(std::string_view field, std::string_view name, int line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw CsvError("line " + std::to_string(line_no) + ": cannot parse " +
                       std::string(name) + " value '" + std::string(field) + "'");
    if (!(value > 0.0))
        throw CsvError("line " + std::to_string(line_no) + ": " + std::string(name) +
                       " must be positive, got '" + std::string(field) + "'");
    return value;
}

std::string format_price(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

} // namespace

std::string to_string(Column column) {
    switch (column) {
        case Column::open: return "open";
        case Column::high: return "high";
        case Column::low: return "low";
        case Column::close: return "close";
    }
    throw UsageError("unknown column enum value");
}

Column column_from_string(std::string_view name) {
    std::string n = lower(name);
    if (n == "open") return Column::open;
    if (n == "high") return Column::high;
    if (n == "low") return Column::low;
    if (n == "close") return Column::close;
    throw UsageError("unknown column '" + std::string(name) +
                     "' (expected open, high, low or close)");
}

double OhlcRecord::value(Column column) const {
    switch (column) {
        case Column::open: return open;
        case Column::high: return high;
        case Column::low: return low;
        case Column::close: return close;
    }
    throw UsageError("unknown column enum value");
}

MarketDataset parse_csv(std::istream& in) {
    std::string line;
    int line_no = 0;

    // Header: locate the five required columns, ignore anything else.
    int month_idx = -1, open_idx = -1, high_idx = -1, low_idx = -1, close_idx = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            std::string name = lower(fields[i]);
            int idx = static_cast<int>(i);
            if (name == "month") month_idx = idx;
            else if (name == "open") open_idx = idx;
            else if (name == "high") high_idx = idx;
            else if (name == "low") low_idx = idx;
            else if (name == "close") close_idx = idx;
        }
        break;
    }
    if (month_idx < 0 || open_idx < 0 || high_idx < 0 || low_idx < 0 || close_idx < 0)
        throw CsvError("header must contain Month, Open, High, Low and Close columns");
    const int needed = 1 + std::max({month_idx, open_idx, high_idx, low_idx, close_idx});

    MarketDataset dataset;
    std::unordered_set<std::string> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (static_cast<int>(fields.size()) < needed)
            throw CsvError("line " + std::to_string(line_no) + ": expected at least " +
                           std::to_string(needed) + " fields, got " +
                           std::to_string(fields.size()));

        OhlcRecord rec;
        rec.month = std::string(fields[static_cast<std::size_t>(month_idx)]);
        if (rec.month.empty())
            throw CsvError("line " + std::to_string(line_no) + ": empty month label");
        if (!seen.insert(rec.month).second)
            throw CsvError("line " + std::to_string(line_no) + ": duplicate month '" +
                           rec.month + "'");
        rec.open = parse_price(fields[static_cast<std::size_t>(open_idx)], "open", line_no);
        rec.high = parse_price(fields[static_cast<std::size_t>(high_idx)], "high", line_no);
        rec.low = parse_price(fields[static_cast<std::size_t>(low_idx)], "low", line_no);
        rec.close = parse_price(fields[static_cast<std::size_t>(close_idx)], "close", line_no);

        if (rec.low > rec.high)
            throw CsvError("line " + std::to_string(line_no) + " (" + rec.month +
                           "): low " + format_price(rec.low) + " exceeds high " +
                           format_price(rec.high));
        auto warn_outside = [&](const char* name, double v) {
            if (v < rec.low || v > rec.high)
                dataset.warnings.push_back(
                    "line " + std::to_string(line_no) + " (" + rec.month + "): " + name +
                    " " + format_price(v) + " outside [" + format_price(rec.low) + ", " +
                    format_price(rec.high) + "]");
        };
        warn_outside("open", rec.open);
        warn_outside("close", rec.close);

        dataset.records.push_back(std::move(rec));
    }
    if (dataset.records.empty())
        throw CsvError("no data rows found");
    return dataset;
}

MarketDataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw CsvError("cannot open '" + path.string() + "'");
    try {
        return parse_csv(in);
    } catch (const CsvError& e) {
        throw CsvError(path.string() + ": " + e.what());
    }
}

void write_csv(const MarketDataset& dataset, std::ostream& out) {
    out << "Month,Open,High,Low,Close\n";
    for (const auto& rec : dataset.records) {
        out << rec.month << ',' << format_price(rec.open) << ',' << format_price(rec.high)
            << ',' << format_price(rec.low) << ',' << format_price(rec.close) << '\n';
    }
}

std::vector<double> extract_column(const MarketDataset& dataset, Column column) {
    std::vector<double> series;
    series.reserve(dataset.records.size());
    for (const auto& rec : dataset.records)
        series.push_back(rec.value(column));
    return series;
}

std::vector<TrainingWindow> make_windows(std::span<const double> series, int window) {
    if (window < 1)
        throw UsageError("window must be at least 1, got " + std::to_string(window));
    std::vector<TrainingWindow> out;
    const std::size_t w = static_cast<std::size_t>(window);
    if (series.size() <= w) return out;
    out.reserve(series.size() - w);
    for (std::size_t i = 0; i + w < series.size(); ++i) {
        TrainingWindow tw;
        tw.inputs.assign(series.begin() + static_cast<std::ptrdiff_t>(i),
                         series.begin() + static_cast<std::ptrdiff_t>(i + w));
        tw.target = series[i + w];
        out.push_back(std::move(tw));
    }
    return out;
}

} // namespace swarmcast
