#include "rightsize/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rightsize/error.hpp"
#include "rightsize/pipeline.hpp"

namespace rightsize {

namespace {

using nlohmann::json;

Recommendation from_point(const CurvePoint& point, SelectionStrategy strategy) {
    Recommendation rec;
    rec.sku_id = point.sku_id;
    rec.strategy = strategy;
    rec.achieved_throttling = point.throttling_prob;
    return rec;
}

}  // namespace

std::string_view to_string(SelectionStrategy s) {
    switch (s) {
        case SelectionStrategy::Doppler: return "doppler";
        case SelectionStrategy::Baseline: return "baseline";
        case SelectionStrategy::LargestIncrease: return "largest-increase";
        case SelectionStrategy::LargestSlope: return "largest-slope";
        case SelectionStrategy::PerfThreshold: return "perf-threshold";
    }
    return "?";
}

std::optional<SelectionStrategy> selection_strategy_from_string(std::string_view name) {
    for (SelectionStrategy s :
         {SelectionStrategy::Doppler, SelectionStrategy::Baseline,
          SelectionStrategy::LargestIncrease, SelectionStrategy::LargestSlope,
          SelectionStrategy::PerfThreshold})
        if (name == to_string(s)) return s;
    return std::nullopt;
}

Recommendation select_doppler(const PricePerfCurve& curve, const GroupModel& model,
                              const NegotiabilityVector& vector) {
    if (curve.points.empty()) raise(Errc::invalid_argument, "selection on empty curve");
    int group_id = group_membership(vector);
    const GroupStats* stats = model.find(group_id);
    if (!stats)
        raise(Errc::unknown_group, "group " + std::to_string(group_id) +
                                       " has no trained tolerance");
    const double tolerance = stats->mean_throttling;

    const CurvePoint* best = nullptr;
    for (const auto& point : curve.points) {
        if (point.throttling_prob > tolerance) continue;
        // Strictly-better distance required: at a tie the earlier
        // (cheaper) point stays.
        if (!best || std::abs(point.throttling_prob - tolerance) <
                         std::abs(best->throttling_prob - tolerance))
            best = &point;
    }

    Recommendation rec;
    if (best) {
        rec = from_point(*best, SelectionStrategy::Doppler);
    } else {
        // Nothing within tolerance: fall back to the least-throttled point.
        const CurvePoint* least = &curve.points.front();
        for (const auto& point : curve.points)
            if (point.throttling_prob < least->throttling_prob) least = &point;
        rec = from_point(*least, SelectionStrategy::Doppler);
        rec.fallback_most_performant = true;
    }
    rec.group_id = group_id;
    rec.target_tolerance = tolerance;
    return rec;
}

Recommendation select_baseline(const PerfTraceSet& set, std::span<const Candidate> candidates,
                               double quantile) {
    if (candidates.empty()) raise(Errc::no_candidate_sku, "no candidates for baseline selection");
    WorkloadSummary summary = summarize(set, quantile);

    const Candidate* best = nullptr;
    for (const auto& candidate : candidates) {
        bool feasible = true;
        for (const auto& [dim, required] : summary.values) {
            auto limit = candidate.effective_limits.get(dim);
            if (limit && *limit < required) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        if (!best || candidate.sku.monthly_price < best->sku.monthly_price ||
            (candidate.sku.monthly_price == best->sku.monthly_price &&
             candidate.sku.id < best->sku.id))
            best = &candidate;
    }
    if (!best) {
        // Name the dimensions no candidate can cover.
        std::string binding;
        for (const auto& [dim, required] : summary.values) {
            bool coverable = false;
            for (const auto& candidate : candidates) {
                auto limit = candidate.effective_limits.get(dim);
                if (!limit || *limit >= required) {
                    coverable = true;
                    break;
                }
            }
            if (!coverable) {
                if (!binding.empty()) binding += ", ";
                binding += to_string(dim);
            }
        }
        if (binding.empty()) binding = "requirement combination";
        raise(Errc::no_feasible_sku,
              "no SKU satisfies every dimension at quantile " + std::to_string(quantile) +
                  " (binding: " + binding + ")");
    }

    Recommendation rec;
    rec.sku_id = best->sku.id;
    rec.strategy = SelectionStrategy::Baseline;
    rec.achieved_throttling = throttling_probability(set, best->effective_limits);
    return rec;
}

Recommendation select_largest_increase(const PricePerfCurve& curve, double epsilon) {
    if (curve.points.empty()) raise(Errc::invalid_argument, "selection on empty curve");
    if (curve.points.size() == 1)
        return from_point(curve.points.front(), SelectionStrategy::LargestIncrease);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        double gain = curve.points[i].score - curve.points[i - 1].score;
        if (gain <= epsilon)
            return from_point(curve.points[i], SelectionStrategy::LargestIncrease);
    }
    return from_point(curve.points.back(), SelectionStrategy::LargestIncrease);
}

Recommendation select_largest_slope(const PricePerfCurve& curve) {
    if (curve.points.empty()) raise(Errc::invalid_argument, "selection on empty curve");
    if (curve.points.size() == 1)
        return from_point(curve.points.front(), SelectionStrategy::LargestSlope);
    std::size_t best = 1;
    double best_slope = -1.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        double slope = (curve.points[i].score - curve.points[i - 1].score) /
                       (curve.points[i].monthly_price - curve.points[i - 1].monthly_price);
        if (slope > best_slope) {
            best_slope = slope;
            best = i;
        }
    }
    return from_point(curve.points[best], SelectionStrategy::LargestSlope);
}

Recommendation select_perf_threshold(const PricePerfCurve& curve, double gamma) {
    if (curve.points.empty()) raise(Errc::invalid_argument, "selection on empty curve");
    if (gamma <= 0.0 || gamma > 1.0) raise(Errc::invalid_argument, "gamma must be in (0, 1]");
    for (const auto& point : curve.points)
        if (point.score >= gamma)
            return from_point(point, SelectionStrategy::PerfThreshold);
    raise(Errc::no_feasible_sku, "no SKU reaches score " + std::to_string(gamma) +
                                     " (binding: joint resource demand)");
}

Recommendation select_on_curve(const PricePerfCurve& curve, const PerfTraceSet& inverted_set,
                               const SelectionContext& context) {
    switch (context.strategy) {
        case SelectionStrategy::Doppler: {
            if (!context.model)
                raise(Errc::invalid_argument, "doppler selection needs a group model");
            NegotiabilityVector vector = profile_workload(
                inverted_set, context.model->deployment, context.model->profile);
            return select_doppler(curve, *context.model, vector);
        }
        case SelectionStrategy::Baseline:
            return select_baseline(inverted_set, context.candidates, context.quantile);
        case SelectionStrategy::LargestIncrease:
            return select_largest_increase(curve, context.epsilon);
        case SelectionStrategy::LargestSlope:
            return select_largest_slope(curve);
        case SelectionStrategy::PerfThreshold:
            return select_perf_threshold(curve, context.gamma);
    }
    raise(Errc::invalid_argument, "unknown strategy");
}

Recommendation run_selection(const PerfTraceSet& raw_set, const SelectionContext& context) {
    PerfTraceSet inverted = with_inverted_latency(raw_set);
    PricePerfCurve curve = build_curve(inverted, context.candidates);
    Recommendation rec = select_on_curve(curve, inverted, context);
    rec.escalated_to_bc = context.escalated_to_bc;
    rec.overprovisioned_input = detect_overprovision(curve, rec.sku_id, context.price_factor);
    return rec;
}

double confidence_score(const PerfTraceSet& raw_set, const SelectionContext& context,
                        int replicates, Duration window, std::uint64_t seed) {
    if (replicates < 1) raise(Errc::invalid_argument, "replicates must be >= 1");
    const std::size_t n = grid_size(raw_set);
    if (n == 0) raise(Errc::empty_trace, "confidence of empty trace set");

    Duration interval = kDefaultInterval;
    const PerfTrace& any_trace = raw_set.traces.begin()->second;
    if (any_trace.samples.size() >= 2)
        interval = std::chrono::duration_cast<Duration>(any_trace.samples[1].timestamp -
                                                        any_trace.samples[0].timestamp);
    Duration span = interval * static_cast<long>(n - 1);
    if (window > span)
        raise(Errc::window_too_long, "window exceeds the trace span of " +
                                         std::to_string(span.count()) + "s");
    if (window.count() <= 0) raise(Errc::invalid_argument, "window must be positive");

    std::size_t window_samples =
        static_cast<std::size_t>(window.count() / interval.count()) + 1;
    window_samples = std::min(window_samples, n);

    Recommendation reference = run_selection(raw_set, context);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> start_of(0, n - window_samples);
    int matches = 0;
    for (int r = 0; r < replicates; ++r) {
        std::size_t start = start_of(rng);
        try {
            Recommendation rec = run_selection(slice(raw_set, start, window_samples), context);
            if (rec.sku_id == reference.sku_id) ++matches;
        } catch (const Error&) {
            // A window that fails to produce a recommendation disagrees
            // with the reference by definition.
        }
    }
    return static_cast<double>(matches) / static_cast<double>(replicates);
}

BacktestReport backtest(std::span<const TrainingExample> dataset, const SkuCatalog& catalog,
                        const GroupModel& model, SelectionStrategy strategy,
                        const BacktestOptions& options) {
    if (dataset.empty()) raise(Errc::invalid_argument, "empty backtest dataset");

    BacktestReport report;
    std::map<std::string, int> tier_total;
    std::map<std::string, int> tier_excluded;
    std::map<std::string, int> tier_matches;

    for (const auto& example : dataset) {
        const SkuSpec* label = catalog.find(example.chosen_sku_id);
        if (!label)
            raise(Errc::unknown_sku, example.chosen_sku_id + " (label of " +
                                         example.traces.object_id + ") not in catalog");
        ++report.total;
        std::string tier{to_string(label->tier)};
        ++tier_total[tier];

        CandidateSet candidates = assemble_candidates(catalog, model.deployment, std::nullopt,
                                                      example.traces, options.quantile);
        PerfTraceSet inverted = with_inverted_latency(example.traces);
        PricePerfCurve curve = build_curve(inverted, candidates.candidates);
        if (!curve.find(example.chosen_sku_id))
            raise(Errc::unknown_sku, example.chosen_sku_id + " missing from the curve of " +
                                         example.traces.object_id);
        if (detect_overprovision(curve, example.chosen_sku_id, options.price_factor)) {
            ++report.excluded_overprovisioned;
            ++tier_excluded[tier];
            continue;
        }

        SelectionContext context;
        context.candidates = candidates.candidates;
        context.model = &model;
        context.strategy = strategy;
        context.quantile = options.quantile;
        context.epsilon = options.epsilon;
        context.gamma = options.gamma;
        context.price_factor = options.price_factor;
        context.escalated_to_bc = candidates.escalated_to_bc;

        bool matched = false;
        try {
            Recommendation rec = select_on_curve(curve, inverted, context);
            matched = rec.sku_id == example.chosen_sku_id;
        } catch (const Error& e) {
            if (e.code() != Errc::no_feasible_sku) throw;
            // A strategy that cannot recommend anything scores a miss.
        }
        if (matched) {
            ++report.exact_match;
            ++tier_matches[tier];
        }
    }

    int denom = report.total - report.excluded_overprovisioned;
    report.accuracy = denom > 0 ? static_cast<double>(report.exact_match) / denom : 0.0;
    for (const auto& [tier, total] : tier_total) {
        int tier_denom = total - tier_excluded[tier];
        if (tier_denom > 0)
            report.per_tier_accuracy[tier] =
                static_cast<double>(tier_matches[tier]) / tier_denom;
    }
    return report;
}

namespace {

json point_to_json(const CurvePoint& point) {
    json j;
    j["sku_id"] = point.sku_id;
    j["monthly_price"] = point.monthly_price;
    j["throttling_prob"] = point.throttling_prob;
    j["score"] = point.score;
    return j;
}

}  // namespace

std::string recommendation_to_json(const Recommendation& rec, const PricePerfCurve& curve) {
    json doc;
    doc["sku_id"] = rec.sku_id;
    doc["strategy"] = std::string(to_string(rec.strategy));
    doc["group_id"] = rec.group_id ? json(*rec.group_id) : json(nullptr);
    doc["target_tolerance"] = rec.target_tolerance ? json(*rec.target_tolerance) : json(nullptr);
    doc["achieved_throttling"] = rec.achieved_throttling;
    doc["confidence"] = rec.confidence ? json(*rec.confidence) : json(nullptr);
    json flags = json::array();
    if (rec.escalated_to_bc) flags.push_back("escalated_to_bc");
    if (rec.fallback_most_performant) flags.push_back("fallback_most_performant");
    if (rec.overprovisioned_input) flags.push_back("overprovisioned_input");
    doc["flags"] = flags;
    json points = json::array();
    for (const auto& point : curve.points) points.push_back(point_to_json(point));
    doc["curve"] = points;
    doc["pruned"] = curve.pruned_sku_ids();
    return doc.dump(2) + "\n";
}

void save_recommendation(const Recommendation& rec, const PricePerfCurve& curve,
                         const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::invalid_argument, "cannot write " + path.string());
    out << recommendation_to_json(rec, curve);
}

std::string backtest_report_to_json(const BacktestReport& report) {
    json doc;
    doc["total"] = report.total;
    doc["excluded_overprovisioned"] = report.excluded_overprovisioned;
    doc["exact_match"] = report.exact_match;
    doc["accuracy"] = report.accuracy;
    doc["per_tier_accuracy"] = report.per_tier_accuracy;
    return doc.dump(2) + "\n";
}

void save_backtest_report(const BacktestReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::invalid_argument, "cannot write " + path.string());
    out << backtest_report_to_json(report);
}

}  // namespace rightsize
