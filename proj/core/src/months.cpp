#include "swarmcast/months.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

namespace swarmcast {
namespace {

constexpr std::array<const char*, 12> kMonthNames = {
    "jan", "feb", "mar", "apr", "may", "jun",
    "jul", "aug", "sep", "oct", "nov", "dec"};

constexpr std::array<const char*, 12> kMonthTitles = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::optional<int> parse_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

} // namespace

std::optional<MonthDate> parse_month_label(std::string_view label) {
    while (!label.empty() && std::isspace(static_cast<unsigned char>(label.front())))
        label.remove_prefix(1);
    while (!label.empty() && std::isspace(static_cast<unsigned char>(label.back())))
        label.remove_suffix(1);
    if (label.empty()) return std::nullopt;

    // ISO form: YYYY-MM
    if (label.size() == 7 && label[4] == '-') {
        auto year = parse_int(label.substr(0, 4));
        auto month = parse_int(label.substr(5, 2));
        if (year && month && *month >= 1 && *month <= 12)
            return MonthDate{*year, *month};
        return std::nullopt;
    }

    // Name form: alphabetic prefix, optional space, two-digit year.
    std::size_t split = 0;
    while (split < label.size() && std::isalpha(static_cast<unsigned char>(label[split])))
        ++split;
    if (split == 0) return std::nullopt;

    std::string name = lower(label.substr(0, split));
    if (name == "sept") name = "sep";
    int month = 0;
    for (int m = 0; m < 12; ++m) {
        if (name == kMonthNames[static_cast<std::size_t>(m)]) {
            month = m + 1;
            break;
        }
    }
    if (month == 0) return std::nullopt;

    std::string_view rest = label.substr(split);
    if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
    if (rest.size() != 2) return std::nullopt;
    auto year = parse_int(rest);
    if (!year) return std::nullopt;
    return MonthDate{2000 + *year, month};
}

MonthDate add_months(MonthDate d, int count) {
    int index = d.year * 12 + (d.month - 1) + count;
    MonthDate out;
    out.year = index / 12;
    out.month = index % 12 + 1;
    if (out.month <= 0) { // negative index, only reachable for BC dates
        out.month += 12;
        out.year -= 1;
    }
    return out;
}

std::string format_iso(MonthDate d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", d.year, d.month);
    return buf;
}

std::string format_paper(MonthDate d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%s %02d",
                  kMonthTitles[static_cast<std::size_t>(d.month - 1)], d.year % 100);
    return buf;
}

} // namespace swarmcast
