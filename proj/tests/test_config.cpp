#include "autocast/core/error.hpp"
#include "autocast/pipeline/config.hpp"

#include <gtest/gtest.h>

#include <json.hpp>

using namespace autocast;
using namespace autocast::pipeline;

namespace {

std::string error_of(std::string_view text) {
    try {
        parse_config_json(text);
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST(Config, EmptyObjectGivesMonthlyDefaults) {
    const auto c = parse_config_json("{}");
    EXPECT_EQ(c.frequency, Frequency::Monthly);
    EXPECT_EQ(c.horizon, 18u);
    EXPECT_EQ(c.holdout, 12u);
    EXPECT_EQ(c.models.size(), kAllModels.size());
    EXPECT_EQ(c.seed, 42u);
    EXPECT_FALSE(c.boosted_log_target);
}

TEST(Config, WeeklyDefaults) {
    const auto c = parse_config_json(R"({"frequency":"weekly"})");
    EXPECT_EQ(c.horizon, 78u);
    EXPECT_EQ(c.holdout, 52u);
    const auto d = parse_config_json(R"({"frequency":"weekly","horizon":10})");
    EXPECT_EQ(d.horizon, 10u);
}

TEST(Config, ErrorsNameTheKey) {
    EXPECT_NE(error_of(R"({"horizon":0})").find("'horizon'"), std::string::npos);
    EXPECT_NE(error_of(R"({"holdout":2})").find("'holdout'"), std::string::npos);
    EXPECT_NE(error_of(R"({"horizn":5})").find("'horizn'"), std::string::npos);
    EXPECT_NE(error_of(R"({"models":["Prophet"]})").find("'models'"), std::string::npos);
    EXPECT_NE(error_of(R"({"frequency":"daily"})").find("'frequency'"), std::string::npos);
    EXPECT_NE(error_of(R"({"seed":-1})").find("'seed'"), std::string::npos);
    EXPECT_NE(error_of(R"({"models":["Naive","GAM"],"ensemble_members":["HWES"]})").find("'ensemble_members'"),
              std::string::npos);
    EXPECT_FALSE(error_of("[1,2]").empty());
    EXPECT_FALSE(error_of("{").empty());
}

TEST(Config, EnsembleMembersFollowEnabledModels) {
    const auto c = parse_config_json(R"({"models":["Naive","HWES","GAM","EnsembleMedian"]})");
    EXPECT_EQ(c.ensemble_members, (std::vector<ModelId>{ModelId::HWES, ModelId::GAM}));
    EXPECT_TRUE(c.enabled(ModelId::GAM));
    EXPECT_FALSE(c.enabled(ModelId::CNN));
}

TEST(Config, EchoRoundTrips) {
    const auto c = parse_config_json(
        R"({"frequency":"weekly","horizon":20,"holdout":30,"seed":7,"ensemble_aggregate":"mean","gam_lambda_grid":[0.1,1]})");
    const auto echo = config_to_json(c);
    const auto back = parse_config_json(echo);
    EXPECT_EQ(config_to_json(back), echo);
    EXPECT_EQ(back.horizon, 20u);
    EXPECT_EQ(back.ensemble_aggregate, models::EnsembleAggregate::Mean);
    EXPECT_EQ(back.gam_lambda_grid, (std::vector<double>{0.1, 1.0}));
}
