#include "autocast/core/error.hpp"
#include "autocast/core/ingest.hpp"
#include "autocast/core/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include <algorithm>
#include <sstream>

using namespace autocast;

namespace {

std::vector<SalesSeries> ingest(std::vector<SalesRecord> records, Frequency f = Frequency::Monthly) {
    return ingest_sales(records, f);
}

std::vector<double> values(const SalesSeries& s) { return {s.values().begin(), s.values().end()}; }

} // namespace

TEST(Ingest, SumsWithinPeriod) {
    const auto out = ingest({{"A", "2023-01-15", 5}, {"A", "2023-01-20", 3}});
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].product_id(), "A");
    EXPECT_EQ(out[0].start().to_string(), "2023-01-01");
    EXPECT_EQ(values(out[0]), (std::vector<double>{8}));
}

TEST(Ingest, FillsGapsWithZeros) {
    const auto out = ingest({{"A", "2023-01-01", 5}, {"A", "2023-03-01", 2}});
    EXPECT_EQ(values(out[0]), (std::vector<double>{5, 0, 2}));
}

TEST(Ingest, FloorsNegativePeriodTotals) {
    EXPECT_EQ(values(ingest({{"A", "2023-01-01", 10}, {"A", "2023-01-05", -4}})[0]), (std::vector<double>{6}));
    EXPECT_EQ(values(ingest({{"A", "2023-01-01", 1}, {"A", "2023-01-05", -4}, {"A", "2023-02-01", 2}})[0]),
              (std::vector<double>{0, 2}));
}

TEST(Ingest, EmptyInputGivesEmptyCorpus) { EXPECT_TRUE(ingest({}).empty()); }

TEST(Ingest, SortsProductsById) {
    const auto out = ingest({{"b", "2023-01-01", 1}, {"a", "2023-01-01", 1}, {"c", "2023-02-01", 1}});
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0].product_id(), "a");
    EXPECT_EQ(out[2].product_id(), "c");
}

TEST(Ingest, WeeklyAggregation) {
    // 2023-01-02 is a Monday; the 8th is the Sunday of the same week.
    const auto out = ingest({{"A", "2023-01-02", 1}, {"A", "2023-01-08", 2}, {"A", "2023-01-16", 4}}, Frequency::Weekly);
    EXPECT_EQ(values(out[0]), (std::vector<double>{3, 0, 4}));
    EXPECT_EQ(out[0].start().to_string(), "2023-01-02");
}

TEST(Ingest, PermutationInvariant) {
    SplitMix64 rng(77);
    std::vector<SalesRecord> records;
    for (int i = 0; i < 400; ++i) {
        const int month = 1 + static_cast<int>(rng.below(12));
        const int day = 1 + static_cast<int>(rng.below(28));
        char date[16];
        std::snprintf(date, sizeof date, "202%d-%02d-%02d", static_cast<int>(rng.below(3)), month, day);
        records.push_back({"P" + std::to_string(rng.below(5)), date, rng.uniform(-20, 100)});
    }
    const auto reference = ingest_sales(records, Frequency::Monthly);
    for (int trial = 0; trial < 20; ++trial) {
        for (std::size_t i = records.size() - 1; i > 0; --i) std::swap(records[i], records[rng.below(i + 1)]);
        EXPECT_EQ(ingest_sales(records, Frequency::Monthly), reference);
    }
}

TEST(Ingest, ErrorsNameTheRow) {
    std::istringstream csv("product_id,date,quantity\nA,2023-01-01,1\nA,2023-13-01,2\n");
    const auto records = read_sales_csv(csv);
    try {
        ingest_sales(records, Frequency::Monthly);
        FAIL() << "expected an InputError";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos) << e.what();
    }
    std::istringstream bad_qty("product_id,date,quantity\nA,2023-01-01,abc\n");
    EXPECT_THROW(
        {
            const auto r = read_sales_csv(bad_qty);
            ingest_sales(r, Frequency::Monthly);
        },
        InputError);
    std::istringstream no_header("A,2023-01-01,1\n");
    EXPECT_THROW(read_sales_csv(no_header), InputError);
    std::istringstream short_row("product_id,date,quantity\nA,2023-01-01\n");
    EXPECT_THROW(read_sales_csv(short_row), InputError);
}

TEST(Ingest, CsvHandlesQuotesBomAndCrlf) {
    std::istringstream csv("\xEF\xBB\xBFproduct_id,date,quantity\r\n\"X, \"\"big\"\"\",2023-01-01,2.5\r\n");
    const auto out = ingest_sales(read_sales_csv(csv), Frequency::Monthly);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0].product_id(), "X, \"big\"");
    EXPECT_EQ(out[0][0], 2.5);
}

TEST(Ingest, WriteReadRoundTrip) {
    const std::vector<SalesSeries> corpus{
        SalesSeries("a,b", Period(Frequency::Monthly, 200), {1.5, 0, 1e-7, 123456.789}),
        SalesSeries("c", Period(Frequency::Monthly, 5), {0.1, 0.2}),
    };
    std::stringstream buf;
    write_sales_csv(buf, corpus);
    const auto back = ingest_sales(read_sales_csv(buf), Frequency::Monthly);
    EXPECT_EQ(back, corpus);
}

TEST(Ingest, FormatDoubleRoundTrips) {
    SplitMix64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform(0, 1e6) * std::pow(10.0, static_cast<double>(rng.below(10)) - 5);
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.0), "0");
    EXPECT_EQ(format_double(2.5), "2.5");
    EXPECT_EQ(csv_escape("plain"), "plain");
    EXPECT_EQ(csv_escape("a\"b"), "\"a\"\"b\"");
}
