#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace swarmcast {

/// A calendar month. `month` runs 1..12.
struct MonthDate {
    int year = 0;
    int month = 0;

    bool operator==(const MonthDate&) const = default;
};

/// Parses month labels as they appear in the bundled data and in forecasts:
/// "Jun11", "Jun 11", "Sept11", "Jan 15", "2011-06". Month names are
/// case-insensitive; "Sept" is accepted alongside "Sep". Two-digit years map
/// to 2000-2099. Returns nullopt for anything else.
std::optional<MonthDate> parse_month_label(std::string_view label);

MonthDate add_months(MonthDate d, int count);

std::string format_iso(MonthDate d);   // "2011-06"
std::string format_paper(MonthDate d); // "Jun 11"

} // namespace swarmcast
