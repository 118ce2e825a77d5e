#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rightsize/catalog.hpp"
#include "rightsize/curve.hpp"
#include "rightsize/ingest.hpp"
#include "rightsize/profiler.hpp"

namespace rightsize {

enum class SelectionStrategy {
    Doppler,          // group-tolerance constrained choice
    Baseline,         // cheapest SKU covering a high quantile of every dimension
    LargestIncrease,  // first point where the score gain flattens out
    LargestSlope,     // steepest score-per-price segment
    PerfThreshold,    // first point at or above a score floor
};

std::string_view to_string(SelectionStrategy s);
std::optional<SelectionStrategy> selection_strategy_from_string(std::string_view name);

inline constexpr double kDefaultEpsilon = 0.001;
inline constexpr double kDefaultGamma = 0.95;
inline constexpr double kDefaultQuantile = 0.95;
inline constexpr int kDefaultReplicates = 30;
inline constexpr Duration kDefaultWindow{7 * 24 * 3600};

struct Recommendation {
    std::string sku_id;
    SelectionStrategy strategy = SelectionStrategy::Doppler;
    std::optional<int> group_id;
    std::optional<double> target_tolerance;   // learned group tolerance
    double achieved_throttling = 0.0;
    std::optional<double> confidence;
    bool escalated_to_bc = false;
    bool overprovisioned_input = false;
    bool fallback_most_performant = false;
};

/// Among kept points with throttling_prob <= the group tolerance, picks the
/// one closest to the tolerance (ties: cheaper). With no feasible point the
/// least-throttled point is returned and flagged as a fallback.
Recommendation select_doppler(const PricePerfCurve& curve, const GroupModel& model,
                              const NegotiabilityVector& vector);

/// Cheapest candidate whose every limit covers the per-dimension quantile
/// summary (latency compared post-inversion). `set` must carry inverted
/// latency. Throws no_feasible_sku naming the binding dimensions.
Recommendation select_baseline(const PerfTraceSet& set, std::span<const Candidate> candidates,
                               double quantile = kDefaultQuantile);

/// First point (ascending price) whose score gain over its predecessor is
/// at most epsilon; the last point when every gain stays significant.
Recommendation select_largest_increase(const PricePerfCurve& curve,
                                       double epsilon = kDefaultEpsilon);

/// Point ending the segment with the largest score-per-price slope
/// (ties: the cheaper segment).
Recommendation select_largest_slope(const PricePerfCurve& curve);

/// First point with score >= gamma; throws no_feasible_sku otherwise.
Recommendation select_perf_threshold(const PricePerfCurve& curve, double gamma = kDefaultGamma);

/// Everything needed to rerun a selection on a trace window: the fixed
/// candidate set plus the strategy and its knobs. `model` is required for
/// the Doppler strategy (and therefore for confidence bootstraps of it).
struct SelectionContext {
    std::vector<Candidate> candidates;
    const GroupModel* model = nullptr;
    SelectionStrategy strategy = SelectionStrategy::Doppler;
    double quantile = kDefaultQuantile;
    double epsilon = kDefaultEpsilon;
    double gamma = kDefaultGamma;
    bool escalated_to_bc = false;
    double price_factor = kDefaultOverprovisionFactor;
};

/// Dispatches to the configured strategy against an already-built curve.
/// `inverted_set` feeds profiling (Doppler) and the baseline summary.
/// Escalation/over-provision flags are left for the caller.
Recommendation select_on_curve(const PricePerfCurve& curve, const PerfTraceSet& inverted_set,
                               const SelectionContext& context);

/// Builds the curve from `raw_set` (inverting latency first), runs the
/// configured strategy and fills in the context flags.
Recommendation run_selection(const PerfTraceSet& raw_set, const SelectionContext& context);

/// Fixes the reference recommendation on the full trace, then reruns the
/// pipeline on `replicates` contiguous windows at seeded random offsets and
/// returns the fraction that agree. A replicate that fails to produce a
/// recommendation counts as a disagreement.
double confidence_score(const PerfTraceSet& raw_set, const SelectionContext& context,
                        int replicates = kDefaultReplicates, Duration window = kDefaultWindow,
                        std::uint64_t seed = 0);

struct BacktestReport {
    int total = 0;
    int excluded_overprovisioned = 0;
    int exact_match = 0;
    double accuracy = 0.0;
    std::map<std::string, double> per_tier_accuracy;  // keyed "gp" / "bc"
};

struct BacktestOptions {
    double quantile = kDefaultQuantile;
    double epsilon = kDefaultEpsilon;
    double gamma = kDefaultGamma;
    double price_factor = kDefaultOverprovisionFactor;
};

/// Replays a labeled dataset: over-provisioned customers are excluded, the
/// rest run the strategy and count exact SKU matches (overall and by the
/// label's service tier). Candidates are assembled per customer from the
/// catalog (MI file layouts derived from observed storage).
BacktestReport backtest(std::span<const TrainingExample> dataset, const SkuCatalog& catalog,
                        const GroupModel& model, SelectionStrategy strategy,
                        const BacktestOptions& options = {});

std::string recommendation_to_json(const Recommendation& rec, const PricePerfCurve& curve);
void save_recommendation(const Recommendation& rec, const PricePerfCurve& curve,
                         const std::filesystem::path& path);
std::string backtest_report_to_json(const BacktestReport& report);
void save_backtest_report(const BacktestReport& report, const std::filesystem::path& path);

}  // namespace rightsize
