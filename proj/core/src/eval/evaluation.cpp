#include "autocast/eval/evaluation.hpp"

#include "autocast/pipeline/svg.hpp"

#include <algorithm>
#include <map>

namespace autocast::eval {

std::optional<double> error_ratio(std::optional<double> model_nrmse, std::optional<double> naive_nrmse) {
    if (!model_nrmse || !naive_nrmse || *naive_nrmse <= 0.0) return std::nullopt;
    return *model_nrmse / *naive_nrmse;
}

Quartiles quartiles(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("quartiles of an empty sample");
    std::sort(values.begin(), values.end());
    Quartiles q;
    q.count = values.size();
    q.min = values.front();
    q.max = values.back();
    q.q1 = pipeline::quantile(values, 0.25);
    q.median = pipeline::quantile(values, 0.5);
    q.q3 = pipeline::quantile(values, 0.75);
    return q;
}

namespace {

std::optional<WilcoxonResult> paired_test(const std::vector<double>& differences, Alternative alternative) {
    if (differences.empty()) return std::nullopt;
    try {
        return wilcoxon_signed_rank(differences, alternative);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

} // namespace

EvaluationSummary summarize(const pipeline::ValidationReport& validation, const pipeline::ForecastBundle& forecasts,
                            std::span<const SalesSeries> actuals, Alternative alternative) {
    EvaluationSummary summary;
    summary.alternative = alternative;
    for (auto id : kAllModels) {
        summary.recommended_histogram[id] = 0;
        summary.best_histogram[id] = 0;
    }
    std::map<std::string_view, const SalesSeries*> actual_by_id;
    for (const auto& s : actuals) actual_by_id[s.product_id()] = &s;

    std::map<ModelId, std::pair<double, std::size_t>> nrmse_sum;
    std::vector<double> rec_ratios, best_ratios, rec_diff, best_diff;

    for (const auto& pv : validation.products) {
        const auto exclude = [&](std::string reason) { summary.excluded.emplace_back(pv.product_id, std::move(reason)); };
        if (!pv.recommended) {
            exclude("no recommendation" + (pv.exclusion_reason.empty() ? std::string() : ": " + pv.exclusion_reason));
            continue;
        }
        const auto* pf = forecasts.find(pv.product_id);
        if (!pf || pf->forecasts.empty()) {
            exclude("missing forecasts");
            continue;
        }
        auto ait = actual_by_id.find(pv.product_id);
        if (ait == actual_by_id.end()) {
            exclude("missing actuals");
            continue;
        }
        const SalesSeries& actual = *ait->second;
        if (actual.frequency() != pf->forecasts.front().start.frequency()) {
            exclude("actuals frequency differs from forecasts");
            continue;
        }

        // Periods covered by every forecast and by the actuals.
        Period lo = actual.start();
        Period hi = actual.last();
        for (const auto& f : pf->forecasts) {
            lo = std::max(lo, f.start);
            hi = std::min(hi, f.start + static_cast<std::int64_t>(f.values.size()) - 1);
        }
        if (hi < lo) {
            exclude("actuals do not cover the forecast periods");
            continue;
        }
        const auto len = static_cast<std::size_t>(hi - lo + 1);
        const auto truth = actual.values().subspan(static_cast<std::size_t>(lo - actual.start()), len);

        ProductScore ps;
        ps.product_id = pv.product_id;
        ps.recommended = *pv.recommended;
        ps.scored_periods = len;
        for (const auto& f : pf->forecasts) {
            const auto pred = std::span<const double>(f.values).subspan(static_cast<std::size_t>(lo - f.start), len);
            ps.realized[f.model_id] = compute_metrics(truth, pred);
        }
        if (!ps.realized.contains(ps.recommended)) {
            exclude("recommended model has no forecast");
            continue;
        }
        if (!ps.realized.contains(ModelId::Naive)) {
            exclude("naive baseline has no forecast");
            continue;
        }
        const std::pair<const ModelId, MetricSet>* best = nullptr;
        for (const auto& entry : ps.realized)
            if (!best || entry.second.rmse < best->second.rmse ||
                (entry.second.rmse == best->second.rmse && priority_rank(entry.first) < priority_rank(best->first)))
                best = &entry;
        ps.best = best->first;
        ps.recommended_nrmse = ps.realized.at(ps.recommended).nrmse;
        ps.best_nrmse = best->second.nrmse;
        ps.naive_nrmse = ps.realized.at(ModelId::Naive).nrmse;
        ps.recommended_ratio = error_ratio(ps.recommended_nrmse, ps.naive_nrmse);
        ps.best_ratio = error_ratio(ps.best_nrmse, ps.naive_nrmse);

        ++summary.recommended_histogram[ps.recommended];
        ++summary.best_histogram[ps.best];
        if (!ps.naive_nrmse) ++summary.undefined_nrmse;
        for (const auto& [id, m] : ps.realized)
            if (m.nrmse) {
                nrmse_sum[id].first += *m.nrmse;
                ++nrmse_sum[id].second;
            }
        if (ps.recommended_ratio) rec_ratios.push_back(*ps.recommended_ratio);
        if (ps.best_ratio) best_ratios.push_back(*ps.best_ratio);
        if (ps.recommended_nrmse && ps.naive_nrmse) rec_diff.push_back(*ps.recommended_nrmse - *ps.naive_nrmse);
        if (ps.best_nrmse && ps.naive_nrmse) best_diff.push_back(*ps.best_nrmse - *ps.naive_nrmse);
        summary.products.push_back(std::move(ps));
    }

    for (const auto& [id, acc] : nrmse_sum) summary.mean_nrmse[id] = acc.first / static_cast<double>(acc.second);
    if (!rec_ratios.empty()) summary.recommended_ratio = quartiles(rec_ratios);
    if (!best_ratios.empty()) summary.best_ratio = quartiles(best_ratios);
    summary.recommended_vs_naive = paired_test(rec_diff, alternative);
    summary.best_vs_naive = paired_test(best_diff, alternative);
    return summary;
}

} // namespace autocast::eval
