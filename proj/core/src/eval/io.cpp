#include "autocast/core/ingest.hpp"
#include "autocast/eval/evaluation.hpp"
#include "autocast/pipeline/svg.hpp"

#include <json.hpp>

#include <fstream>

namespace autocast::eval {

using nlohmann::json;

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json quartiles_json(const std::optional<Quartiles>& q) {
    if (!q) return nullptr;
    return {{"count", q->count}, {"min", q->min},       {"q1", q->q1},
            {"median", q->median}, {"q3", q->q3}, {"max", q->max}};
}

json wilcoxon_json(const std::optional<WilcoxonResult>& w) {
    if (!w) return nullptr;
    return {{"statistic", w->statistic}, {"p_value", w->p_value}, {"n", w->n}, {"exact", w->exact}};
}

json histogram_json(const std::map<ModelId, std::size_t>& h) {
    json j = json::object();
    for (const auto& [id, c] : h) j[std::string(to_string(id))] = c;
    return j;
}

std::string_view alternative_name(Alternative a) {
    switch (a) {
    case Alternative::TwoSided: return "two-sided";
    case Alternative::Less: return "less";
    case Alternative::Greater: return "greater";
    }
    return "two-sided";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string na(const std::optional<double>& v) { return v ? format_double(*v) : "NA"; }

} // namespace

std::string evaluation_to_json(const EvaluationSummary& s) {
    json j;
    j["products_scored"] = s.products.size();
    j["undefined_nrmse"] = s.undefined_nrmse;
    json excluded = json::array();
    for (const auto& [id, reason] : s.excluded) excluded.push_back({{"product_id", id}, {"reason", reason}});
    j["excluded"] = excluded;
    json mean = json::object();
    for (const auto& [id, v] : s.mean_nrmse) mean[std::string(to_string(id))] = v;
    j["mean_nrmse"] = mean;
    j["recommended_histogram"] = histogram_json(s.recommended_histogram);
    j["best_histogram"] = histogram_json(s.best_histogram);
    j["ratio_quartiles"] = {{"recommended", quartiles_json(s.recommended_ratio)},
                            {"best", quartiles_json(s.best_ratio)}};
    j["wilcoxon"] = {{"alternative", alternative_name(s.alternative)},
                     {"recommended_vs_naive", wilcoxon_json(s.recommended_vs_naive)},
                     {"best_vs_naive", wilcoxon_json(s.best_vs_naive)}};
    json products = json::array();
    for (const auto& p : s.products) {
        json realized = json::object();
        for (const auto& [id, m] : p.realized)
            realized[std::string(to_string(id))] = {
                {"rmse", m.rmse}, {"nrmse", optional_json(m.nrmse)}, {"mape", optional_json(m.mape)}};
        products.push_back({{"product_id", p.product_id},
                            {"recommended", std::string(to_string(p.recommended))},
                            {"best", std::string(to_string(p.best))},
                            {"scored_periods", p.scored_periods},
                            {"recommended_nrmse", optional_json(p.recommended_nrmse)},
                            {"best_nrmse", optional_json(p.best_nrmse)},
                            {"naive_nrmse", optional_json(p.naive_nrmse)},
                            {"recommended_ratio", optional_json(p.recommended_ratio)},
                            {"best_ratio", optional_json(p.best_ratio)},
                            {"realized", realized}});
    }
    j["products"] = products;
    return j.dump(2) + "\n";
}

void export_evaluation(const EvaluationSummary& s, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
    write_file(dir / "evaluation.json", evaluation_to_json(s));

    std::string csv = "product_id,recommended,recommended_nrmse,best,best_nrmse,naive_nrmse,recommended_ratio,best_ratio\n";
    for (const auto& p : s.products)
        csv += csv_escape(p.product_id) + ',' + std::string(to_string(p.recommended)) + ',' + na(p.recommended_nrmse) +
               ',' + std::string(to_string(p.best)) + ',' + na(p.best_nrmse) + ',' + na(p.naive_nrmse) + ',' +
               na(p.recommended_ratio) + ',' + na(p.best_ratio) + '\n';
    write_file(dir / "ratios.csv", csv);

    std::vector<pipeline::BoxGroup> groups{{"recommended", {}}, {"best", {}}};
    for (const auto& p : s.products) {
        if (p.recommended_ratio) groups[0].values.push_back(*p.recommended_ratio);
        if (p.best_ratio) groups[1].values.push_back(*p.best_ratio);
    }
    write_file(dir / "boxplot.svg", pipeline::boxplot_svg("Error ratio to the naive baseline", groups, 3.5));
}

} // namespace autocast::eval
