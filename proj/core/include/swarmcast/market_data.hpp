#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace swarmcast {

enum class Column { open, high, low, close };

constexpr std::array<Column, 4> all_columns() {
    return {Column::open, Column::high, Column::low, Column::close};
}

std::string to_string(Column column);
Column column_from_string(std::string_view name); // throws UsageError

/// One month of index prices, labelled the way the data file labels it.
struct OhlcRecord {
    std::string month;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;

    double value(Column column) const;
};

struct MarketDataset {
    std::vector<OhlcRecord> records;
    /// Non-fatal oddities found during parsing (open/close outside [low, high]).
    std::vector<std::string> warnings;
};

/// Parses monthly OHLC data from CSV. The header must contain Month, Open,
/// High, Low and Close (case-insensitive, any order); extra columns are
/// ignored. Throws CsvError for a bad header, an unparseable or non-positive
/// price, low > high, a duplicate month label, or a file with no data rows.
MarketDataset parse_csv(std::istream& in);

/// Opens `path` and parses it; errors mention the path.
MarketDataset load_csv(const std::filesystem::path& path);

/// Writes Month,Open,High,Low,Close with prices at two decimal places.
void write_csv(const MarketDataset& dataset, std::ostream& out);

std::vector<double> extract_column(const MarketDataset& dataset, Column column);

/// A sliding-window training case: `window` consecutive values and the one
/// that follows them.
struct TrainingWindow {
    std::vector<double> inputs;
    double target = 0.0;
};

/// Builds every window of length `window` with a successor in the series.
/// A series of length N yields max(0, N - window) cases. `window` must be
/// at least 1 (UsageError otherwise).
std::vector<TrainingWindow> make_windows(std::span<const double> series, int window);

} // namespace swarmcast
