#pragma once

#include "autocast/core/series.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace autocast::synth {

enum class Archetype { Seasonality, SeasonalityTrend, HighVariance, ShortHistory };

std::string_view to_string(Archetype kind) noexcept;
Archetype parse_archetype(std::string_view name);

/**
 * Parameters of one synthetic product:
 *
 *   y_t = max(0, level * (1 + trend * t / length)
 *                + amplitude * cos(2*pi * ((t mod m) - phase) / m) + e_t)
 *
 * with e_t ~ N(0, (noise * level)^2), then rescaled to a mean of 1000.
 * The phase is drawn uniformly from [0, m) unless given.
 */
struct ArchetypeSpec {
    std::string product_id;
    Archetype kind = Archetype::Seasonality;
    std::size_t length = 72;
    double level = 1000.0;
    double amplitude = 300.0;
    double trend = 0.0;
    double noise = 0.05;
    std::uint64_t seed = 0;
    std::optional<double> phase;
    Frequency frequency = Frequency::Monthly;
    std::string start = "2016-01-01";

    /// Typical parameters for each archetype.
    static ArchetypeSpec defaults(Archetype kind, std::string product_id);

    /// length >= 6, amplitude and noise >= 0, ShortHistory shorter than two
    /// seasons, HighVariance noise >= 0.5. Throws std::invalid_argument.
    void validate() const;
};

/// Deterministic in (spec, spec.seed).
SalesSeries generate_product(const ArchetypeSpec& spec);

/// Each product's stream seed mixes the corpus seed, the product id and the
/// spec seed, so a product's series does not depend on the other specs.
/// Throws std::invalid_argument on duplicate product ids.
std::vector<SalesSeries> generate_corpus(std::span<const ArchetypeSpec> specs, std::uint64_t corpus_seed);

/// Round-robin over the four archetypes with per-product parameter jitter;
/// ShortHistory products get `short_length` periods.
std::vector<ArchetypeSpec> mixed_specs(std::size_t count, std::size_t length, std::uint64_t seed,
                                       std::size_t short_length = 20);

/// Reads a JSON array of specs, or an object {"seed": N, "products": [...]}.
/// Missing fields take the archetype defaults. Throws InputError.
struct SpecFile {
    std::vector<ArchetypeSpec> specs;
    std::optional<std::uint64_t> seed;
};
SpecFile parse_spec_json(std::string_view text);
SpecFile read_spec_file(const std::filesystem::path& path);

} // namespace autocast::synth
