#include "autocast/core/period.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace autocast {
namespace {

using namespace std::chrono;

constexpr year_month_day kWeeklyEpoch{year{2000}, month{1}, day{3}};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int parse_int(std::string_view text, std::string_view what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw std::invalid_argument("invalid " + std::string(what) + " in date");
    return value;
}

} // namespace

std::string_view to_string(Frequency f) noexcept {
    return f == Frequency::Monthly ? "monthly" : "weekly";
}

Frequency parse_frequency(std::string_view text) {
    if (text == "monthly") return Frequency::Monthly;
    if (text == "weekly") return Frequency::Weekly;
    throw std::invalid_argument("unknown frequency '" + std::string(text) + "'");
}

Period::Period(Frequency frequency, std::int64_t index) : frequency_(frequency), index_(index) {
    if (index < 0) throw std::invalid_argument("period index must be non-negative");
}

Period Period::containing(Frequency frequency, year_month_day date) {
    if (!date.ok()) throw std::invalid_argument("invalid calendar date");
    if (frequency == Frequency::Monthly) {
        const std::int64_t idx = (static_cast<int>(date.year()) - 2000) * 12LL +
                                 (static_cast<unsigned>(date.month()) - 1);
        if (idx < 0) throw std::invalid_argument("date precedes the monthly epoch (2000-01)");
        return Period(frequency, idx);
    }
    const auto days = (sys_days{date} - sys_days{kWeeklyEpoch}).count();
    if (days < 0) throw std::invalid_argument("date precedes the weekly epoch (2000-01-03)");
    return Period(frequency, floor_div(days, 7));
}

int Period::season_slot() const noexcept {
    return static_cast<int>(index_ % season_length(frequency_));
}

year_month_day Period::first_day() const {
    if (frequency_ == Frequency::Monthly) {
        const auto y = 2000 + static_cast<int>(index_ / 12);
        const auto m = static_cast<unsigned>(index_ % 12) + 1;
        return year_month_day{year{y}, month{m}, day{1}};
    }
    return year_month_day{sys_days{kWeeklyEpoch} + days{7 * index_}};
}

std::string Period::to_string() const {
    const auto d = first_day();
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

Period Period::operator+(std::int64_t offset) const { return Period(frequency_, index_ + offset); }

std::int64_t Period::operator-(const Period& other) const {
    if (frequency_ != other.frequency_)
        throw std::invalid_argument("cannot subtract periods of different frequencies");
    return index_ - other.index_;
}

std::strong_ordering Period::operator<=>(const Period& other) const {
    if (frequency_ != other.frequency_)
        throw std::invalid_argument("cannot order periods of different frequencies");
    return index_ <=> other.index_;
}

year_month_day parse_iso_date(std::string_view text) {
    if (text.size() > 10 && (text[10] == 'T' || text[10] == ' ')) text = text.substr(0, 10);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw std::invalid_argument("expected YYYY-MM-DD, got '" + std::string(text) + "'");
    const int y = parse_int(text.substr(0, 4), "year");
    const int m = parse_int(text.substr(5, 2), "month");
    const int d = parse_int(text.substr(8, 2), "day");
    const year_month_day date{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!date.ok()) throw std::invalid_argument("impossible date '" + std::string(text) + "'");
    return date;
}

} // namespace autocast
