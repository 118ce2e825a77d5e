#include "rightsize/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "rightsize/error.hpp"

namespace rightsize {

std::string_view to_string(CurveShape shape) {
    switch (shape) {
        case CurveShape::Flat: return "flat";
        case CurveShape::Simple: return "simple";
        case CurveShape::Complex: return "complex";
    }
    return "?";
}

std::vector<std::string> PricePerfCurve::pruned_sku_ids() const {
    std::vector<std::string> ids;
    ids.reserve(pruned.size());
    for (const auto& point : pruned) ids.push_back(point.sku_id);
    return ids;
}

const CurvePoint* PricePerfCurve::find(std::string_view sku_id) const {
    for (const auto& point : points)
        if (point.sku_id == sku_id) return &point;
    for (const auto& point : pruned)
        if (point.sku_id == sku_id) return &point;
    return nullptr;
}

double throttling_probability(const PerfTraceSet& set, const ResourceLimits& limits) {
    std::size_t n = 0;
    for (const auto& [dim, trace] : set.traces) {
        if (n == 0)
            n = trace.samples.size();
        else if (trace.samples.size() != n)
            raise(Errc::grid_mismatch, "traces of " + set.object_id + " differ in length");
    }
    if (n == 0) raise(Errc::empty_trace, "throttling probability of empty trace set");

    std::size_t exceeded = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [dim, trace] : set.traces) {
            auto limit = limits.get(dim);
            if (!limit) continue;
            if (trace.samples[i].value > *limit) {
                ++exceeded;
                break;
            }
        }
    }
    return static_cast<double>(exceeded) / static_cast<double>(n);
}

MonotonicityResult enforce_monotonicity(std::vector<CurvePoint> points) {
    MonotonicityResult result;
    for (auto& point : points) {
        if (result.kept.empty()) {
            result.kept.push_back(std::move(point));
            continue;
        }
        const CurvePoint& last = result.kept.back();
        // Same price: the sort already put the better point first. Higher
        // price: only a strictly better score escapes domination.
        if (point.monthly_price > last.monthly_price && point.score > last.score)
            result.kept.push_back(std::move(point));
        else
            result.pruned.push_back(std::move(point));
    }
    return result;
}

PricePerfCurve build_curve(const PerfTraceSet& set, std::span<const Candidate> candidates) {
    if (candidates.empty()) raise(Errc::no_candidate_sku, "no candidates to rank");

    std::vector<CurvePoint> points;
    points.reserve(candidates.size());
    for (const auto& candidate : candidates) {
        double prob = throttling_probability(set, candidate.effective_limits);
        points.push_back({candidate.sku.id, candidate.sku.monthly_price, prob, 1.0 - prob});
    }
    std::sort(points.begin(), points.end(), [](const CurvePoint& a, const CurvePoint& b) {
        if (a.monthly_price != b.monthly_price) return a.monthly_price < b.monthly_price;
        if (a.score != b.score) return a.score > b.score;
        return a.sku_id < b.sku_id;
    });

    auto [kept, pruned] = enforce_monotonicity(std::move(points));
    return PricePerfCurve{std::move(kept), std::move(pruned)};
}

CurveShape classify_shape(const PricePerfCurve& curve) {
    if (curve.points.empty()) raise(Errc::invalid_argument, "shape of empty curve");
    bool all_one = true;
    bool bimodal = true;
    bool has_zero = false;
    bool has_one = false;
    for (const auto& point : curve.points) {
        bool is_one = std::abs(point.score - 1.0) <= kScoreTolerance;
        bool is_zero = std::abs(point.score) <= kScoreTolerance;
        all_one = all_one && is_one;
        bimodal = bimodal && (is_one || is_zero);
        has_zero = has_zero || is_zero;
        has_one = has_one || is_one;
    }
    if (all_one) return CurveShape::Flat;
    if (bimodal && has_zero && has_one) return CurveShape::Simple;
    return CurveShape::Complex;
}

bool detect_overprovision(const PricePerfCurve& curve, std::string_view chosen_sku_id,
                          double price_factor) {
    if (price_factor < 1.0) raise(Errc::invalid_argument, "price_factor must be >= 1");
    const CurvePoint* chosen = curve.find(chosen_sku_id);
    if (!chosen) raise(Errc::unknown_sku, std::string(chosen_sku_id) + " not on the curve");

    // Cheapest fully satisfying point; kept points are price-sorted but the
    // chosen SKU may sit among the pruned ones, so scan both lists.
    double best = -1.0;
    for (const auto& point : curve.points)
        if (std::abs(point.score - 1.0) <= kScoreTolerance &&
            (best < 0.0 || point.monthly_price < best))
            best = point.monthly_price;
    for (const auto& point : curve.pruned)
        if (std::abs(point.score - 1.0) <= kScoreTolerance &&
            (best < 0.0 || point.monthly_price < best))
            best = point.monthly_price;
    if (best < 0.0) return false;
    return chosen->monthly_price >= price_factor * best;
}

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void write_curve_csv(const PricePerfCurve& curve, std::ostream& out) {
    struct Row {
        const CurvePoint* point;
        bool pruned;
    };
    std::vector<Row> rows;
    rows.reserve(curve.points.size() + curve.pruned.size());
    for (const auto& point : curve.points) rows.push_back({&point, false});
    for (const auto& point : curve.pruned) rows.push_back({&point, true});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.point->monthly_price != b.point->monthly_price)
            return a.point->monthly_price < b.point->monthly_price;
        if (a.pruned != b.pruned) return !a.pruned;
        return a.point->sku_id < b.point->sku_id;
    });

    out << "rank,sku_id,monthly_price,throttling_prob,score,pruned\n";
    int rank = 1;
    for (const auto& row : rows) {
        out << rank++ << ',' << row.point->sku_id << ',' << format_value(row.point->monthly_price)
            << ',' << format_value(row.point->throttling_prob) << ','
            << format_value(row.point->score) << ',' << (row.pruned ? 1 : 0) << '\n';
    }
}

void write_curve_csv(const PricePerfCurve& curve, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::invalid_argument, "cannot write " + path.string());
    write_curve_csv(curve, out);
}

}  // namespace rightsize
