#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace autocast {

enum class Frequency { Monthly, Weekly };

/// Periods per seasonal cycle: 12 for monthly data, 52 for weekly data.
constexpr int season_length(Frequency f) noexcept {
    return f == Frequency::Monthly ? 12 : 52;
}

std::string_view to_string(Frequency f) noexcept;
Frequency parse_frequency(std::string_view text);

/**
 * A calendar period counted from a fixed epoch.
 *
 * Monthly index 0 is January 2000. Weekly index 0 is the ISO week that
 * starts on Monday 2000-01-03. Periods of different frequencies are not
 * comparable; ordering them throws std::invalid_argument.
 */
class Period {
public:
    Period(Frequency frequency, std::int64_t index);

    /// Period containing the given civil date. Throws std::invalid_argument
    /// for dates before the epoch of the frequency.
    static Period containing(Frequency frequency, std::chrono::year_month_day date);

    Frequency frequency() const noexcept { return frequency_; }
    std::int64_t index() const noexcept { return index_; }

    /// Position within the seasonal cycle, in [0, season_length).
    /// Month-of-year for monthly data; week index modulo 52 for weekly data.
    int season_slot() const noexcept;

    /// First civil day of the period.
    std::chrono::year_month_day first_day() const;

    /// ISO-8601 date of the first day (YYYY-MM-DD).
    std::string to_string() const;

    Period operator+(std::int64_t offset) const;
    Period operator-(std::int64_t offset) const { return *this + (-offset); }

    /// Number of periods from `other` to this period.
    std::int64_t operator-(const Period& other) const;

    bool operator==(const Period&) const = default;
    std::strong_ordering operator<=>(const Period& other) const;

private:
    Frequency frequency_;
    std::int64_t index_;
};

/// Parses YYYY-MM-DD, optionally followed by a time part ('T' or ' ').
/// Throws std::invalid_argument on malformed or impossible dates.
std::chrono::year_month_day parse_iso_date(std::string_view text);

} // namespace autocast
