#include "autocast/pipeline/export.hpp"

#include "autocast/core/error.hpp"
#include "autocast/core/ingest.hpp"
#include "autocast/core/random.hpp"
#include "autocast/pipeline/svg.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace autocast::pipeline {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string optional_number(const std::optional<double>& v) { return v ? format_double(*v) : "NA"; }

void write_validation_csv(const ValidationReport& report, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "product_id,model_id,rmse,nrmse,mape,recommended\n";
    for (const auto& p : report.products)
        for (const auto& s : p.scores)
            out << csv_escape(p.product_id) << ',' << to_string(s.model) << ',' << format_double(s.metrics.rmse) << ','
                << optional_number(s.metrics.nrmse) << ',' << optional_number(s.metrics.mape) << ','
                << (p.recommended == s.model ? 1 : 0) << '\n';
    finish(out, path);
}

json summary_json(const ValidationReport& report, const ForecastBundle* bundle, const PipelineConfig& config) {
    std::size_t full = 0, short_history = 0, excluded = 0;
    std::map<ModelId, std::size_t> histogram;
    for (auto id : kAllModels) histogram[id] = 0;
    json exclusions = json::array();
    json flags = json::object();
    for (const auto& p : report.products) {
        switch (p.validity) {
        case Validity::FullPipeline: ++full; break;
        case Validity::ShortHistory: ++short_history; break;
        case Validity::Excluded: ++excluded; break;
        }
        if (p.validity == Validity::Excluded)
            exclusions.push_back({{"product_id", p.product_id}, {"length", p.length}, {"reason", p.exclusion_reason}});
        if (p.recommended) ++histogram[*p.recommended];
        std::vector<std::string> all = p.flags;
        if (bundle)
            if (const auto* pf = bundle->find(p.product_id))
                for (const auto& f : pf->flags) all.push_back("final: " + f);
        if (!all.empty()) flags[p.product_id] = all;
    }
    json hist = json::object();
    for (const auto& [id, count] : histogram) hist[std::string(to_string(id))] = count;

    json j;
    j["products"] = {{"total", report.products.size()},
                     {"full_pipeline", full},
                     {"short_history", short_history},
                     {"excluded", excluded}};
    j["recommendation_histogram"] = hist;
    j["exclusions"] = exclusions;
    j["flags"] = flags;
    json run_flags = report.flags;
    if (bundle)
        for (const auto& f : bundle->flags) run_flags.push_back("final: " + f);
    j["run_flags"] = run_flags;
    if (bundle) {
        j["forecast_products"] = bundle->products.size();
        j["horizon"] = bundle->horizon;
    }
    j["frequency"] = std::string(to_string(config.frequency));
    j["seed"] = config.seed;
    j["config"] = json::parse(config_to_json(config));
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    finish(out, path);
}

void ensure_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t row) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    if (quoted) throw InputError("row " + std::to_string(row) + ": unterminated quote");
    return fields;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path, std::string_view expected_header) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw InputError(path.string() + ": missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line != expected_header)
        throw InputError(path.string() + ": expected header '" + std::string(expected_header) + "'");
    std::vector<std::vector<std::string>> rows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        rows.push_back(split_csv_line(line, row));
        rows.back().push_back(std::to_string(row));
    }
    return rows;
}

double parse_number(const std::string& text, std::size_t row) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError("row " + std::to_string(row) + ": invalid number '" + text + "'");
    }
}

} // namespace

std::string sanitize_filename(std::string_view product_id) {
    std::string out;
    for (char c : product_id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        out += ok ? c : '_';
    }
    if (out != product_id || out.empty() || out.front() == '.') {
        char hash[20];
        std::snprintf(hash, sizeof hash, "_%08llx",
                      static_cast<unsigned long long>(fnv1a(product_id) & 0xffffffffULL));
        out += hash;
    }
    return out;
}

void export_validation(const ValidationReport& report, const PipelineConfig& config, const std::filesystem::path& dir) {
    ensure_dir(dir);
    write_validation_csv(report, dir / "validation.csv");
    write_text(dir / "summary.json", summary_json(report, nullptr, config).dump(2) + "\n");
}

void export_bundle(const ForecastBundle& bundle, const ValidationReport& report, const PipelineConfig& config,
                   const std::filesystem::path& dir) {
    ensure_dir(dir);
    {
        const auto path = dir / "forecasts.csv";
        auto out = open_out(path);
        out << "product_id,model_id,period,value\n";
        for (const auto& p : bundle.products)
            for (const auto& f : p.forecasts)
                for (std::size_t h = 0; h < f.values.size(); ++h)
                    out << csv_escape(p.product_id) << ',' << to_string(f.model_id) << ','
                        << (f.start + static_cast<std::int64_t>(h)).to_string() << ',' << format_double(f.values[h])
                        << '\n';
        finish(out, path);
    }
    write_validation_csv(report, dir / "validation.csv");
    write_text(dir / "summary.json", summary_json(report, &bundle, config).dump(2) + "\n");

    for (const auto& p : bundle.products) {
        std::vector<SvgPanel> panels{{"observed", p.observed}};
        if (p.decomposition) {
            panels.push_back({"trend", p.decomposition->trend});
            panels.push_back({"seasonal", p.decomposition->seasonal});
        }
        write_text(dir / ("decomposition_" + sanitize_filename(p.product_id) + ".svg"),
                   stacked_lines_svg(p.product_id, panels));
    }
}

ForecastBundle read_forecasts_csv(const std::filesystem::path& path, Frequency frequency) {
    std::map<std::string, std::map<ModelId, ForecastResult>> grouped;
    for (const auto& f : read_csv(path, "product_id,model_id,period,value")) {
        const auto row = static_cast<std::size_t>(std::stoull(f.back()));
        if (f.size() != 5) throw InputError("row " + std::to_string(row) + ": expected 4 fields");
        ModelId id;
        Period period(frequency, 0);
        try {
            id = parse_model_id(f[1]);
            period = Period::containing(frequency, parse_iso_date(f[2]));
        } catch (const std::exception& e) {
            throw InputError("row " + std::to_string(row) + ": " + e.what());
        }
        const double value = parse_number(f[3], row);
        auto& models = grouped[f[0]];
        auto it = models.find(id);
        if (it == models.end()) {
            models.emplace(id, ForecastResult{f[0], id, period, {value}});
            continue;
        }
        auto& result = it->second;
        if (period != result.start + static_cast<std::int64_t>(result.values.size()))
            throw InputError("row " + std::to_string(row) + ": forecast periods are not contiguous");
        result.values.push_back(value);
    }
    ForecastBundle bundle;
    for (auto& [product, models] : grouped) {
        ProductForecasts pf;
        pf.product_id = product;
        for (auto& [id, result] : models) {
            bundle.horizon = std::max(bundle.horizon, result.values.size());
            pf.forecasts.push_back(std::move(result));
        }
        bundle.products.push_back(std::move(pf));
    }
    return bundle;
}

ValidationReport read_validation_csv(const std::filesystem::path& path) {
    std::map<std::string, ProductValidation> grouped;
    for (const auto& f : read_csv(path, "product_id,model_id,rmse,nrmse,mape,recommended")) {
        const auto row = static_cast<std::size_t>(std::stoull(f.back()));
        if (f.size() != 7) throw InputError("row " + std::to_string(row) + ": expected 6 fields");
        ModelId id;
        try {
            id = parse_model_id(f[1]);
        } catch (const std::exception& e) {
            throw InputError("row " + std::to_string(row) + ": " + e.what());
        }
        ModelScore score{id, {}, {}};
        score.metrics.rmse = parse_number(f[2], row);
        if (f[3] != "NA") score.metrics.nrmse = parse_number(f[3], row);
        if (f[4] != "NA") score.metrics.mape = parse_number(f[4], row);
        auto& pv = grouped[f[0]];
        pv.product_id = f[0];
        pv.validity = Validity::FullPipeline;
        if (f[5] == "1") {
            if (pv.recommended) throw InputError("row " + std::to_string(row) + ": second recommendation for product");
            pv.recommended = id;
        } else if (f[5] != "0") {
            throw InputError("row " + std::to_string(row) + ": recommended must be 0 or 1");
        }
        pv.scores.push_back(std::move(score));
    }
    ValidationReport report;
    for (auto& [_, pv] : grouped) report.products.push_back(std::move(pv));
    return report;
}

} // namespace autocast::pipeline
