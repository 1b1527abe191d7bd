#include "autocast/core/error.hpp"
#include "autocast/core/ingest.hpp"
#include "autocast/eval/evaluation.hpp"
#include "autocast/pipeline/config.hpp"
#include "autocast/pipeline/export.hpp"
#include "autocast/pipeline/pipeline.hpp"
#include "autocast/synth/generator.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace autocast;

namespace {

struct PipelineArgs {
    std::string input;
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
};

void add_pipeline_options(CLI::App* cmd, PipelineArgs& args) {
    cmd->add_option("--input", args.input, "Sales CSV (product_id,date,quantity)");
    cmd->add_option("--config", args.config, "JSON configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out, "Output directory");
    cmd->add_option("--seed", args.seed, "Override the configured seed");
    cmd->add_option("--workers", args.workers, "Worker threads (0 = all cores)");
}

pipeline::PipelineConfig load_config(const PipelineArgs& args) {
    auto config = args.config.empty() ? pipeline::PipelineConfig{} : pipeline::parse_config(args.config);
    if (!args.input.empty()) config.input = args.input;
    if (!args.out.empty()) config.output = args.out;
    if (args.seed) config.seed = *args.seed;
    if (args.workers) config.workers = *args.workers;
    if (config.input.empty()) throw InputError("no input: pass --input or set 'input' in the config");
    if (config.output.empty()) throw InputError("no output directory: pass --out or set 'output' in the config");
    return config;
}

std::vector<SalesSeries> load_sales(const std::string& path, Frequency frequency) {
    const auto records = read_sales_csv(std::filesystem::path(path));
    return ingest_sales(records, frequency);
}

int run_validate(const PipelineArgs& args) {
    const auto config = load_config(args);
    const auto corpus = load_sales(config.input, config.frequency);
    const auto report = pipeline::run_validation(corpus, config);
    pipeline::export_validation(report, config, config.output);
    std::cout << "validated " << report.products.size() << " products -> " << config.output << '\n';
    return 0;
}

int run_forecast(const PipelineArgs& args) {
    const auto config = load_config(args);
    const auto corpus = load_sales(config.input, config.frequency);
    const auto report = pipeline::run_validation(corpus, config);
    const auto bundle = pipeline::finalize_and_forecast(corpus, report, config);
    pipeline::export_bundle(bundle, report, config, config.output);
    std::cout << "forecast " << bundle.products.size() << " products -> " << config.output << '\n';
    return 0;
}

struct EvaluateArgs {
    std::string forecasts;
    std::string actuals;
    std::string out;
    std::string frequency;
    std::string alternative = "two-sided";
};

Frequency evaluation_frequency(const EvaluateArgs& args) {
    if (!args.frequency.empty()) return parse_frequency(args.frequency);
    const auto summary = std::filesystem::path(args.forecasts) / "summary.json";
    std::ifstream in(summary);
    if (!in) return Frequency::Monthly;
    try {
        const auto j = nlohmann::json::parse(in);
        return parse_frequency(j.at("frequency").get<std::string>());
    } catch (const std::exception& e) {
        throw InputError(summary.string() + ": " + e.what());
    }
}

int run_evaluate(const EvaluateArgs& args) {
    const Frequency frequency = evaluation_frequency(args);
    const std::filesystem::path dir(args.forecasts);
    const auto bundle = pipeline::read_forecasts_csv(dir / "forecasts.csv", frequency);
    const auto report = pipeline::read_validation_csv(dir / "validation.csv");
    const auto actuals = load_sales(args.actuals, frequency);
    eval::Alternative alternative = eval::Alternative::TwoSided;
    if (args.alternative == "less")
        alternative = eval::Alternative::Less;
    else if (args.alternative == "greater")
        alternative = eval::Alternative::Greater;
    else if (args.alternative != "two-sided")
        throw InputError("--alternative must be two-sided, less or greater");
    const auto summary = eval::summarize(report, bundle, actuals, alternative);
    eval::export_evaluation(summary, args.out);
    std::cout << "scored " << summary.products.size() << " products";
    if (summary.recommended_ratio) std::cout << ", median ratio " << summary.recommended_ratio->median;
    if (summary.recommended_vs_naive) std::cout << ", Wilcoxon p " << summary.recommended_vs_naive->p_value;
    std::cout << " -> " << args.out << '\n';
    return 0;
}

struct SynthArgs {
    std::string spec;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::size_t mixed = 0;
    std::size_t length = 96;
    std::size_t truncate = 0;
    std::string actuals;
};

void write_csv(const std::string& path, std::span<const SalesSeries> corpus) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_sales_csv(out, corpus);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

int run_synth(const SynthArgs& args) {
    synth::SpecFile file;
    if (!args.spec.empty()) {
        file = synth::read_spec_file(args.spec);
    } else if (args.mixed > 0) {
        file.specs = synth::mixed_specs(args.mixed, args.length, args.seed.value_or(0));
    } else {
        throw InputError("pass --spec or --mixed");
    }
    const std::uint64_t seed = args.seed ? *args.seed : file.seed.value_or(0);
    const auto corpus = synth::generate_corpus(file.specs, seed);
    if (args.truncate > 0) {
        if (args.actuals.empty()) throw InputError("--truncate requires --actuals");
        write_csv(args.actuals, corpus);
        std::vector<SalesSeries> trimmed;
        for (const auto& s : corpus)
            if (s.size() > args.truncate) trimmed.push_back(s.prefix(s.size() - args.truncate));
        write_csv(args.out, trimmed);
    } else {
        write_csv(args.out, corpus);
    }
    std::cout << "generated " << corpus.size() << " products -> " << args.out << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Automated per-product sales forecasting"};
    app.require_subcommand(1);

    PipelineArgs validate_args;
    auto* validate = app.add_subcommand("validate", "Backtest every model and write validation.csv and summary.json");
    add_pipeline_options(validate, validate_args);

    PipelineArgs forecast_args;
    auto* forecast = app.add_subcommand("forecast", "Validate, refit on full histories and export forecasts");
    add_pipeline_options(forecast, forecast_args);

    EvaluateArgs evaluate_args;
    auto* evaluate = app.add_subcommand("evaluate", "Score exported forecasts against realised sales");
    evaluate->add_option("--forecasts", evaluate_args.forecasts, "Directory written by `forecast`")->required();
    evaluate->add_option("--actuals", evaluate_args.actuals, "Realised sales CSV")->required();
    evaluate->add_option("--out", evaluate_args.out, "Output directory")->required();
    evaluate->add_option("--frequency", evaluate_args.frequency, "monthly or weekly (default: from summary.json)");
    evaluate->add_option("--alternative", evaluate_args.alternative, "two-sided, less or greater");

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic sales corpus");
    synth->add_option("--spec", synth_args.spec, "JSON product specs")->check(CLI::ExistingFile);
    synth->add_option("--out", synth_args.out, "Output sales CSV")->required();
    synth->add_option("--seed", synth_args.seed, "Corpus seed");
    synth->add_option("--mixed", synth_args.mixed, "Generate N mixed-archetype products instead of --spec");
    synth->add_option("--length", synth_args.length, "History length for --mixed");
    synth->add_option("--truncate", synth_args.truncate, "Drop the last N periods from --out");
    synth->add_option("--actuals", synth_args.actuals, "Full-length CSV written alongside --truncate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*validate) return run_validate(validate_args);
        if (*forecast) return run_forecast(forecast_args);
        if (*evaluate) return run_evaluate(evaluate_args);
        if (*synth) return run_synth(synth_args);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
