#include "autocast/pipeline/config.hpp"

#include "autocast/core/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace autocast::pipeline {

using nlohmann::json;

PipelineConfig PipelineConfig::defaults(Frequency frequency) {
    PipelineConfig c;
    c.frequency = frequency;
    c.horizon = frequency == Frequency::Monthly ? 18 : 78;
    c.holdout = frequency == Frequency::Monthly ? 12 : 52;
    return c;
}

bool PipelineConfig::enabled(ModelId id) const { return std::find(models.begin(), models.end(), id) != models.end(); }

void PipelineConfig::validate() const {
    if (horizon < 1) throw InputError("config key 'horizon': must be >= 1");
    if (holdout < 3) throw InputError("config key 'holdout': must be >= 3");
    if (models.empty()) throw InputError("config key 'models': at least one model is required");
    std::set<ModelId> seen;
    for (auto id : models)
        if (!seen.insert(id).second)
            throw InputError("config key 'models': duplicate model " + std::string(to_string(id)));
    for (auto id : ensemble_members) {
        if (id == ModelId::EnsembleMedian)
            throw InputError("config key 'ensemble_members': the ensemble cannot be its own member");
        if (!enabled(id))
            throw InputError("config key 'ensemble_members': " + std::string(to_string(id)) + " is not enabled");
    }
    for (double l : gam_lambda_grid)
        if (!(l >= 0.0) || !std::isfinite(l))
            throw InputError("config key 'gam_lambda_grid': values must be finite and >= 0");
}

namespace {

template <typename Fn>
auto with_key(const std::string& key, Fn&& fn) {
    try {
        return fn();
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError("config key '" + key + "': " + e.what());
    }
}

std::size_t positive_size(const json& v, const std::string& key) {
    if (!v.is_number_integer()) throw InputError("config key '" + key + "': expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < 0) throw InputError("config key '" + key + "': must be >= 0");
    return static_cast<std::size_t>(x);
}

std::vector<ModelId> model_list(const json& v, const std::string& key) {
    if (!v.is_array()) throw InputError("config key '" + key + "': expected an array of model names");
    std::vector<ModelId> out;
    for (const auto& item : v) out.push_back(with_key(key, [&] { return parse_model_id(item.get<std::string>()); }));
    return out;
}

} // namespace

PipelineConfig parse_config_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed config JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("config: expected a JSON object");

    static const std::set<std::string> known{
        "frequency", "horizon", "holdout", "models", "ensemble_members", "ensemble_aggregate", "seed",
        "gam_lambda_grid", "boosted_log_target", "workers", "input", "output"};
    for (const auto& [key, _] : doc.items())
        if (!known.contains(key)) throw InputError("config key '" + key + "': unknown key");

    Frequency freq = Frequency::Monthly;
    if (doc.contains("frequency"))
        freq = with_key("frequency", [&] { return parse_frequency(doc["frequency"].get<std::string>()); });
    PipelineConfig c = PipelineConfig::defaults(freq);

    if (doc.contains("horizon")) c.horizon = positive_size(doc["horizon"], "horizon");
    if (doc.contains("holdout")) c.holdout = positive_size(doc["holdout"], "holdout");
    if (doc.contains("models")) c.models = model_list(doc["models"], "models");
    if (doc.contains("ensemble_members"))
        c.ensemble_members = model_list(doc["ensemble_members"], "ensemble_members");
    else
        std::erase_if(c.ensemble_members, [&](ModelId id) { return !c.enabled(id); });
    if (doc.contains("ensemble_aggregate")) {
        const auto name = with_key("ensemble_aggregate", [&] { return doc["ensemble_aggregate"].get<std::string>(); });
        if (name == "median")
            c.ensemble_aggregate = models::EnsembleAggregate::Median;
        else if (name == "mean")
            c.ensemble_aggregate = models::EnsembleAggregate::Mean;
        else
            throw InputError("config key 'ensemble_aggregate': expected \"median\" or \"mean\"");
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<std::int64_t>() >= 0))
            throw InputError("config key 'seed': expected a non-negative integer");
        c.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("gam_lambda_grid")) {
        const auto& g = doc["gam_lambda_grid"];
        if (!g.is_array()) throw InputError("config key 'gam_lambda_grid': expected an array of numbers");
        for (const auto& v : g) {
            if (!v.is_number()) throw InputError("config key 'gam_lambda_grid': expected an array of numbers");
            c.gam_lambda_grid.push_back(v.get<double>());
        }
    }
    if (doc.contains("boosted_log_target")) {
        if (!doc["boosted_log_target"].is_boolean())
            throw InputError("config key 'boosted_log_target': expected a boolean");
        c.boosted_log_target = doc["boosted_log_target"].get<bool>();
    }
    if (doc.contains("workers")) c.workers = positive_size(doc["workers"], "workers");
    if (doc.contains("input")) c.input = with_key("input", [&] { return doc["input"].get<std::string>(); });
    if (doc.contains("output")) c.output = with_key("output", [&] { return doc["output"].get<std::string>(); });

    c.validate();
    return c;
}

PipelineConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_json(buf.str());
}

std::string config_to_json(const PipelineConfig& c) {
    json j;
    j["frequency"] = std::string(to_string(c.frequency));
    j["horizon"] = c.horizon;
    j["holdout"] = c.holdout;
    j["models"] = json::array();
    for (auto id : c.models) j["models"].push_back(std::string(to_string(id)));
    j["ensemble_members"] = json::array();
    for (auto id : c.ensemble_members) j["ensemble_members"].push_back(std::string(to_string(id)));
    j["ensemble_aggregate"] = c.ensemble_aggregate == models::EnsembleAggregate::Median ? "median" : "mean";
    j["seed"] = c.seed;
    j["gam_lambda_grid"] = c.gam_lambda_grid;
    j["boosted_log_target"] = c.boosted_log_target;
    return j.dump(2);
}

} // namespace autocast::pipeline
