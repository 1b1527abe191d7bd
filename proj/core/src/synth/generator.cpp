#include "autocast/synth/generator.hpp"

#include "autocast/core/error.hpp"
#include "autocast/core/random.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace autocast::synth {

namespace {

constexpr std::string_view kNames[] = {"Seasonality", "SeasonalityTrend", "HighVariance", "ShortHistory"};

} // namespace

std::string_view to_string(Archetype kind) noexcept { return kNames[static_cast<int>(kind)]; }

Archetype parse_archetype(std::string_view name) {
    for (int i = 0; i < 4; ++i)
        if (kNames[i] == name) return static_cast<Archetype>(i);
    throw std::invalid_argument("unknown archetype: " + std::string(name));
}

ArchetypeSpec ArchetypeSpec::defaults(Archetype kind, std::string product_id) {
    ArchetypeSpec s;
    s.product_id = std::move(product_id);
    s.kind = kind;
    switch (kind) {
    case Archetype::Seasonality:
        s.amplitude = 300.0;
        break;
    case Archetype::SeasonalityTrend:
        s.amplitude = 250.0;
        s.trend = 0.8;
        break;
    case Archetype::HighVariance:
        s.amplitude = 150.0;
        s.noise = 0.6;
        break;
    case Archetype::ShortHistory:
        s.length = 18;
        s.amplitude = 250.0;
        s.noise = 0.1;
        break;
    }
    return s;
}

void ArchetypeSpec::validate() const {
    const auto fail = [&](const std::string& what) {
        throw std::invalid_argument("archetype spec '" + product_id + "': " + what);
    };
    if (product_id.empty()) fail("empty product id");
    if (length < 6) fail("length must be at least 6");
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) fail("amplitude must be >= 0");
    if (!(noise >= 0.0) || !std::isfinite(noise)) fail("noise must be >= 0");
    if (!std::isfinite(level) || !std::isfinite(trend)) fail("level and trend must be finite");
    if (phase && !std::isfinite(*phase)) fail("phase must be finite");
    const auto m = static_cast<std::size_t>(season_length(frequency));
    if (kind == Archetype::ShortHistory && length >= 2 * m) fail("ShortHistory length must be below two seasons");
    if (kind == Archetype::HighVariance && noise < 0.5) fail("HighVariance noise must be >= 0.5");
    parse_iso_date(start);
}

SalesSeries generate_product(const ArchetypeSpec& spec) {
    spec.validate();
    const int m = season_length(spec.frequency);
    SplitMix64 rng(spec.seed);
    const double phase = spec.phase ? *spec.phase : rng.uniform(0.0, static_cast<double>(m));
    const double sd = spec.noise * spec.level;
    const auto n = static_cast<double>(spec.length);

    std::vector<double> y(spec.length);
    for (std::size_t t = 0; t < spec.length; ++t) {
        const double slot = static_cast<double>(t % static_cast<std::size_t>(m));
        const double base = spec.level * (1.0 + spec.trend * static_cast<double>(t) / n);
        const double season = spec.amplitude * std::cos(2.0 * std::numbers::pi * (slot - phase) / m);
        y[t] = std::max(0.0, base + season + sd * rng.normal());
    }

    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= n;
    if (mean > 0.0)
        for (double& v : y) v *= 1000.0 / mean;
    else
        std::fill(y.begin(), y.end(), 1000.0);

    const Period start = Period::containing(spec.frequency, parse_iso_date(spec.start));
    return SalesSeries(spec.product_id, start, std::move(y));
}

std::vector<SalesSeries> generate_corpus(std::span<const ArchetypeSpec> specs, std::uint64_t corpus_seed) {
    std::set<std::string> seen;
    for (const auto& s : specs)
        if (!seen.insert(s.product_id).second) throw std::invalid_argument("duplicate product id: " + s.product_id);

    std::vector<SalesSeries> out;
    out.reserve(specs.size());
    for (const auto& s : specs) {
        ArchetypeSpec derived = s;
        derived.seed = mix64(corpus_seed ^ mix64(fnv1a(s.product_id) ^ mix64(s.seed)));
        out.push_back(generate_product(derived));
    }
    return out;
}

std::vector<ArchetypeSpec> mixed_specs(std::size_t count, std::size_t length, std::uint64_t seed,
                                       std::size_t short_length) {
    SplitMix64 rng(mix64(seed ^ 0x5EEDu));
    std::vector<ArchetypeSpec> specs;
    specs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto kind = static_cast<Archetype>(i % 4);
        char id[32];
        std::snprintf(id, sizeof id, "P%04zu", i);
        auto s = ArchetypeSpec::defaults(kind, id);
        s.length = kind == Archetype::ShortHistory ? short_length : length;
        s.amplitude *= rng.uniform(0.6, 1.4);
        if (kind == Archetype::SeasonalityTrend) s.trend = rng.uniform(0.3, 1.2);
        if (kind == Archetype::HighVariance) s.noise = rng.uniform(0.5, 0.8);
        s.seed = i;
        specs.push_back(std::move(s));
    }
    return specs;
}

namespace {

ArchetypeSpec spec_from_json(const nlohmann::json& j, std::size_t index) {
    const std::string where = "spec[" + std::to_string(index) + "]";
    if (!j.is_object()) throw InputError(where + ": expected an object");
    static const std::set<std::string> known{"product_id", "kind",  "length",    "level",  "amplitude", "trend",
                                             "noise",      "seed",  "phase",     "frequency", "start"};
    for (const auto& [key, _] : j.items())
        if (!known.contains(key)) throw InputError(where + ": unknown key '" + key + "'");
    try {
        if (!j.contains("product_id")) throw InputError(where + ": missing 'product_id'");
        const auto kind = parse_archetype(j.value("kind", std::string("Seasonality")));
        auto s = ArchetypeSpec::defaults(kind, j.at("product_id").get<std::string>());
        if (j.contains("frequency")) s.frequency = parse_frequency(j["frequency"].get<std::string>());
        if (kind == Archetype::ShortHistory && s.frequency == Frequency::Weekly) s.length = 78;
        if (j.contains("length")) s.length = j["length"].get<std::size_t>();
        if (j.contains("level")) s.level = j["level"].get<double>();
        if (j.contains("amplitude")) s.amplitude = j["amplitude"].get<double>();
        if (j.contains("trend")) s.trend = j["trend"].get<double>();
        if (j.contains("noise")) s.noise = j["noise"].get<double>();
        if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("phase")) s.phase = j["phase"].get<double>();
        if (j.contains("start")) s.start = j["start"].get<std::string>();
        s.validate();
        return s;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(where + ": " + e.what());
    }
}

} // namespace

SpecFile parse_spec_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed spec JSON: ") + e.what());
    }
    SpecFile file;
    const nlohmann::json* list = &doc;
    if (doc.is_object()) {
        for (const auto& [key, _] : doc.items())
            if (key != "seed" && key != "products") throw InputError("spec: unknown key '" + key + "'");
        if (!doc.contains("products")) throw InputError("spec: missing 'products'");
        if (doc.contains("seed")) {
            if (!doc["seed"].is_number_unsigned()) throw InputError("spec: 'seed' must be a non-negative integer");
            file.seed = doc["seed"].get<std::uint64_t>();
        }
        list = &doc["products"];
    }
    if (!list->is_array()) throw InputError("spec: expected an array of product specs");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < list->size(); ++i) {
        file.specs.push_back(spec_from_json((*list)[i], i));
        if (!seen.insert(file.specs.back().product_id).second)
            throw InputError("spec[" + std::to_string(i) + "]: duplicate product id '" +
                             file.specs.back().product_id + "'");
    }
    return file;
}

SpecFile read_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec_json(buf.str());
}

} // namespace autocast::synth
