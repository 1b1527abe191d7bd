#include "autocast/core/error.hpp"
#include "autocast/synth/generator.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace autocast;
using namespace autocast::synth;

namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

std::vector<double> vals(const SalesSeries& s) { return {s.values().begin(), s.values().end()}; }

} // namespace

TEST(Synth, MeanRescaledToThousand) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        for (int k = 0; k < 4; ++k) {
            auto spec = ArchetypeSpec::defaults(static_cast<Archetype>(k), "X");
            spec.seed = seed;
            const auto s = generate_product(spec);
            EXPECT_EQ(s.size(), spec.length);
            EXPECT_NEAR(mean(vals(s)), 1000.0, 1e-9);
            for (double v : vals(s)) EXPECT_GE(v, 0.0);
        }
    }
}

TEST(Synth, NoiseFreeSeasonalityIsPeriodic) {
    auto spec = ArchetypeSpec::defaults(Archetype::Seasonality, "S");
    spec.noise = 0.0;
    spec.seed = 9;
    const auto s = generate_product(spec);
    for (std::size_t t = 0; t + 12 < s.size(); ++t) EXPECT_EQ(s[t], s[t + 12]);
    auto weekly = spec;
    weekly.frequency = Frequency::Weekly;
    weekly.length = 160;
    const auto w = generate_product(weekly);
    for (std::size_t t = 0; t + 52 < w.size(); ++t) EXPECT_EQ(w[t], w[t + 52]);
}

TEST(Synth, PhaseShiftsPeak) {
    auto spec = ArchetypeSpec::defaults(Archetype::Seasonality, "S");
    spec.noise = 0.0;
    spec.phase = 5.0;
    const auto s = generate_product(spec);
    const auto peak = std::max_element(s.values().begin(), s.values().begin() + 12) - s.values().begin();
    EXPECT_EQ(peak, 5);
}

TEST(Synth, TrendDrift) {
    auto spec = ArchetypeSpec::defaults(Archetype::SeasonalityTrend, "T");
    spec.noise = 0.0;
    const auto s = generate_product(spec);
    const std::vector<double> first(s.values().begin(), s.values().begin() + 12);
    const std::vector<double> last(s.values().end() - 12, s.values().end());
    // Drift over 60 periods: level * trend * 60 / 72, before the mean rescale.
    const double raw_mean = 1000.0 * (1.0 + 0.8 * 35.5 / 72.0);
    EXPECT_NEAR(mean(last) - mean(first), 1000.0 * 0.8 * 60.0 / 72.0 * 1000.0 / raw_mean, 1e-6);
}

TEST(Synth, Deterministic) {
    const auto specs = mixed_specs(12, 60, 5);
    const auto a = generate_corpus(specs, 77);
    const auto b = generate_corpus(specs, 77);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(vals(a[i]), vals(b[i]));
    const auto c = generate_corpus(specs, 78);
    EXPECT_NE(vals(a[0]), vals(c[0]));
}

TEST(Synth, RemovingASpecLeavesOthersUnchanged) {
    const auto specs = mixed_specs(10, 48, 3);
    const auto full = generate_corpus(specs, 11);
    std::vector<ArchetypeSpec> fewer(specs.begin(), specs.end());
    fewer.erase(fewer.begin() + 4);
    const auto partial = generate_corpus(fewer, 11);
    for (const auto& s : partial) {
        const auto it = std::find_if(full.begin(), full.end(), [&](const auto& f) { return f.product_id() == s.product_id(); });
        ASSERT_NE(it, full.end());
        EXPECT_EQ(vals(*it), vals(s));
    }
}

TEST(Synth, MixedCorpusShape) {
    const auto specs = mixed_specs(8, 96, 1);
    ASSERT_EQ(specs.size(), 8u);
    EXPECT_EQ(specs[0].product_id, "P0000");
    EXPECT_EQ(specs[3].kind, Archetype::ShortHistory);
    EXPECT_EQ(specs[3].length, 20u);
    EXPECT_EQ(specs[1].length, 96u);
    for (const auto& s : specs) EXPECT_NO_THROW(s.validate());
}

TEST(Synth, DuplicateIdsRejected) {
    std::vector<ArchetypeSpec> specs{ArchetypeSpec::defaults(Archetype::Seasonality, "A"),
                                     ArchetypeSpec::defaults(Archetype::HighVariance, "A")};
    EXPECT_THROW(generate_corpus(specs, 1), std::invalid_argument);
}

TEST(Synth, InvalidSpecsRejected) {
    auto s = ArchetypeSpec::defaults(Archetype::ShortHistory, "S");
    s.length = 24;
    EXPECT_THROW(s.validate(), std::invalid_argument);
    auto h = ArchetypeSpec::defaults(Archetype::HighVariance, "H");
    h.noise = 0.2;
    EXPECT_THROW(h.validate(), std::invalid_argument);
    auto n = ArchetypeSpec::defaults(Archetype::Seasonality, "N");
    n.amplitude = -1;
    EXPECT_THROW(n.validate(), std::invalid_argument);
}

TEST(SpecJson, ParsesBothShapes) {
    const auto a = parse_spec_json(R"([{"product_id":"A","kind":"SeasonalityTrend","length":50,"seed":3}])");
    ASSERT_EQ(a.specs.size(), 1u);
    EXPECT_FALSE(a.seed.has_value());
    EXPECT_EQ(a.specs[0].kind, Archetype::SeasonalityTrend);
    EXPECT_EQ(a.specs[0].length, 50u);
    EXPECT_DOUBLE_EQ(a.specs[0].trend, 0.8);
    EXPECT_EQ(a.specs[0].seed, 3u);

    const auto b = parse_spec_json(R"({"seed":9,"products":[{"product_id":"W","kind":"ShortHistory","frequency":"weekly"}]})");
    EXPECT_EQ(*b.seed, 9u);
    EXPECT_EQ(b.specs[0].frequency, Frequency::Weekly);
    EXPECT_EQ(b.specs[0].length, 78u);
}

TEST(SpecJson, Errors) {
    EXPECT_THROW(parse_spec_json("[{"), InputError);
    EXPECT_THROW(parse_spec_json(R"([{"product_id":"A","colour":"red"}])"), InputError);
    EXPECT_THROW(parse_spec_json(R"([{"kind":"Seasonality"}])"), InputError);
    EXPECT_THROW(parse_spec_json(R"([{"product_id":"A","kind":"Spiky"}])"), InputError);
    EXPECT_THROW(parse_spec_json(R"([{"product_id":"A"},{"product_id":"A"}])"), InputError);
    EXPECT_THROW(parse_spec_json(R"({"products":[],"extra":1})"), InputError);
}
