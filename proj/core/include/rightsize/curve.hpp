#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rightsize/catalog.hpp"
#include "rightsize/ingest.hpp"
#include "rightsize/limits.hpp"

namespace rightsize {

struct CurvePoint {
    std::string sku_id;
    double monthly_price = 0.0;
    double throttling_prob = 0.0;
    double score = 1.0;  // always 1 - throttling_prob
};

/// Price-ordered ranking of candidate SKUs. `points` is the Pareto frontier
/// (strictly increasing price, non-decreasing score); dominated candidates
/// are kept under `pruned` so exports and over-provision checks can still
/// see their price and probability.
struct PricePerfCurve {
    std::vector<CurvePoint> points;
    std::vector<CurvePoint> pruned;

    std::vector<std::string> pruned_sku_ids() const;
    const CurvePoint* find(std::string_view sku_id) const;  // kept or pruned
};

enum class CurveShape { Flat, Simple, Complex };

std::string_view to_string(CurveShape shape);

/// A SKU paired with the limits it is evaluated against (for MI General
/// Purpose these come from mi_effective_limits, otherwise from the catalog).
struct Candidate {
    SkuSpec sku;
    ResourceLimits effective_limits;
};

/// Fraction of grid timestamps at which usage strictly exceeds the limit in
/// at least one constrained dimension. Traces must share one grid and the
/// latency trace must already be inverted. Dimensions without a limit (or
/// without a trace) never throttle.
double throttling_probability(const PerfTraceSet& set, const ResourceLimits& limits);

/// Scores every candidate, orders by ascending price (ties: higher score,
/// then smaller sku_id) and prunes Pareto-dominated points.
PricePerfCurve build_curve(const PerfTraceSet& set, std::span<const Candidate> candidates);

struct MonotonicityResult {
    std::vector<CurvePoint> kept;
    std::vector<CurvePoint> pruned;
};

/// Removes every point strictly dominated by another (price <= and
/// score >=, at least one strict). Exact (price, score) duplicates keep the
/// earliest point in list order so kept prices stay strictly increasing.
/// Input must be sorted ascending by price (at equal price: score
/// descending, then sku_id).
MonotonicityResult enforce_monotonicity(std::vector<CurvePoint> points);

inline constexpr double kScoreTolerance = 1e-9;

/// Flat: every score is 1. Simple: scores split between exactly 0 and
/// exactly 1, both present. Complex: anything else.
CurveShape classify_shape(const PricePerfCurve& curve);

/// True when a fully satisfying SKU (score 1) exists at price p* and the
/// chosen SKU costs at least price_factor * p*. The chosen SKU may be a
/// pruned point; unknown ids throw.
bool detect_overprovision(const PricePerfCurve& curve, std::string_view chosen_sku_id,
                          double price_factor = 2.0);

inline constexpr double kDefaultOverprovisionFactor = 2.0;

/// Plot-ready export: `rank,sku_id,monthly_price,throttling_prob,score,pruned`
/// over kept and pruned points merged in price order.
void write_curve_csv(const PricePerfCurve& curve, std::ostream& out);
void write_curve_csv(const PricePerfCurve& curve, const std::filesystem::path& path);

}  // namespace rightsize
