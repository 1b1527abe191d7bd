#include "autocast/core/random.hpp"
#include "autocast/deeplearn/network.hpp"
#include "autocast/eval/wilcoxon.hpp"
#include "autocast/models/arima.hpp"
#include "autocast/models/gam.hpp"
#include "autocast/models/smoothing.hpp"
#include "autocast/pipeline/pipeline.hpp"
#include "autocast/synth/generator.hpp"

#include <benchmark/benchmark.h>

using namespace autocast;

namespace {

SalesSeries sample_series(std::size_t length, std::uint64_t seed = 1) {
    auto spec = synth::ArchetypeSpec::defaults(synth::Archetype::SeasonalityTrend, "B");
    spec.length = length;
    spec.seed = seed;
    return synth::generate_product(spec);
}

void BM_FitHwes(benchmark::State& state) {
    const auto s = sample_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(models::fit_hwes(s));
}
BENCHMARK(BM_FitHwes)->Arg(48)->Arg(96);

void BM_FitArimaGrid(benchmark::State& state) {
    const auto s = sample_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(models::fit_arima(s, state.range(1) != 0));
}
BENCHMARK(BM_FitArimaGrid)->Args({84, 0})->Args({84, 1})->Unit(benchmark::kMillisecond);

void BM_FitGam(benchmark::State& state) {
    const auto s = sample_series(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(models::fit_gam(s, {}));
}
BENCHMARK(BM_FitGam)->Arg(84)->Unit(benchmark::kMillisecond);

void BM_CnnForwardBackward(benchmark::State& state) {
    const nn::CnnConfig config;
    nn::DilatedCnn net(config, 1);
    SplitMix64 rng(2);
    Eigen::MatrixXd windows(state.range(0), static_cast<Eigen::Index>(config.input_window));
    for (Eigen::Index i = 0; i < windows.size(); ++i) windows(i) = rng.uniform(0, 2);
    const Eigen::VectorXd targets = Eigen::VectorXd::Ones(windows.rows());
    nn::DilatedCnn::Cache cache;
    for (auto _ : state) {
        net.forward(windows, cache);
        benchmark::DoNotOptimize(net.backward(cache, targets));
    }
}
BENCHMARK(BM_CnnForwardBackward)->Arg(32);

void BM_WilcoxonExact(benchmark::State& state) {
    SplitMix64 rng(3);
    std::vector<double> d(static_cast<std::size_t>(state.range(0)));
    for (auto& v : d) v = rng.normal();
    for (auto _ : state)
        benchmark::DoNotOptimize(eval::wilcoxon_signed_rank(d, eval::Alternative::TwoSided, eval::WilcoxonMethod::Exact));
}
BENCHMARK(BM_WilcoxonExact)->Arg(12)->Arg(20)->Arg(50);

void BM_ValidationPerCorpus(benchmark::State& state) {
    const auto specs = synth::mixed_specs(static_cast<std::size_t>(state.range(0)), 96, 1);
    const auto corpus = synth::generate_corpus(specs, 1);
    auto cfg = pipeline::PipelineConfig::defaults(Frequency::Monthly);
    cfg.workers = 1;
    for (auto _ : state) benchmark::DoNotOptimize(pipeline::run_validation(corpus, cfg));
}
BENCHMARK(BM_ValidationPerCorpus)->Arg(8)->Unit(benchmark::kMillisecond)->Iterations(1);

} // namespace

BENCHMARK_MAIN();
