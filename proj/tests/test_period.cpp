#include "autocast/core/period.hpp"

#include <gtest/gtest.h>

using namespace autocast;
using namespace std::chrono;

TEST(Period, MonthlyEpochIsJanuary2000) {
    const Period p = Period::containing(Frequency::Monthly, 2000y / January / 31d);
    EXPECT_EQ(p.index(), 0);
    EXPECT_EQ(p.to_string(), "2000-01-01");
    EXPECT_EQ(Period::containing(Frequency::Monthly, 2023y / March / 1d).index(), 23 * 12 + 2);
}

TEST(Period, WeeklyEpochStartsMonday2000_01_03) {
    EXPECT_EQ(Period::containing(Frequency::Weekly, 2000y / January / 3d).index(), 0);
    EXPECT_EQ(Period::containing(Frequency::Weekly, 2000y / January / 9d).index(), 0);
    EXPECT_EQ(Period::containing(Frequency::Weekly, 2000y / January / 10d).index(), 1);
    EXPECT_THROW(Period::containing(Frequency::Weekly, 2000y / January / 2d), std::invalid_argument);
    EXPECT_EQ(Period(Frequency::Weekly, 1).to_string(), "2000-01-10");
}

TEST(Period, FirstDayRoundTripsThroughContaining) {
    for (std::int64_t i = 0; i < 2000; i += 7) {
        for (auto f : {Frequency::Monthly, Frequency::Weekly}) {
            const Period p(f, i);
            EXPECT_EQ(Period::containing(f, p.first_day()), p);
            EXPECT_EQ(Period::containing(f, parse_iso_date(p.to_string())), p);
        }
    }
}

TEST(Period, SeasonSlots) {
    EXPECT_EQ(Period(Frequency::Monthly, 0).season_slot(), 0);
    EXPECT_EQ(Period(Frequency::Monthly, 14).season_slot(), 2);
    EXPECT_EQ(Period(Frequency::Weekly, 53).season_slot(), 1);
    for (std::int64_t i = 0; i < 300; ++i) {
        EXPECT_EQ(Period(Frequency::Monthly, i).season_slot(), (Period(Frequency::Monthly, i) + 12).season_slot());
        EXPECT_EQ(Period(Frequency::Weekly, i).season_slot(), (Period(Frequency::Weekly, i) + 52).season_slot());
    }
}

TEST(Period, Arithmetic) {
    const Period a(Frequency::Monthly, 10);
    EXPECT_EQ((a + 5).index(), 15);
    EXPECT_EQ((a - 3).index(), 7);
    EXPECT_EQ((a + 5) - a, 5);
    EXPECT_LT(a, a + 1);
    EXPECT_THROW(a - 11, std::invalid_argument);
    EXPECT_THROW(Period(Frequency::Monthly, -1), std::invalid_argument);
}

TEST(Period, MixedFrequencyOrderingThrows) {
    const Period m(Frequency::Monthly, 3);
    const Period w(Frequency::Weekly, 3);
    EXPECT_NE(m, w);
    EXPECT_THROW((void)(m < w), std::invalid_argument);
}

TEST(Period, ParseIsoDate) {
    EXPECT_EQ(parse_iso_date("2023-02-28"), 2023y / February / 28d);
    EXPECT_EQ(parse_iso_date("2023-02-28T13:45:00"), 2023y / February / 28d);
    EXPECT_EQ(parse_iso_date("2023-02-28 08:00"), 2023y / February / 28d);
    EXPECT_THROW(parse_iso_date("2023-02-30"), std::invalid_argument);
    EXPECT_THROW(parse_iso_date("2023/02/01"), std::invalid_argument);
    EXPECT_THROW(parse_iso_date(""), std::invalid_argument);
    EXPECT_EQ(parse_frequency("weekly"), Frequency::Weekly);
    EXPECT_THROW(parse_frequency("daily"), std::invalid_argument);
}
