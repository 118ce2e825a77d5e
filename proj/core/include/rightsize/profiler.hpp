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

namespace rightsize {

enum class ProfileStrategy {
    Threshold,     // spike-duration window below the max
    MinMaxAuc,     // ECDF area after min-max scaling
    MaxAuc,        // ECDF area after max-only scaling
    OutlierPct,    // fraction beyond 3 standard deviations
    StlVar,        // variance explained by trend + seasonality
    MinMaxAucPlusThreshold,
};

std::string_view to_string(ProfileStrategy s);
std::optional<ProfileStrategy> profile_strategy_from_string(std::string_view name);

/// Dimensions summarized per deployment, in group-encoding order
/// (first entry is the most significant bit).
std::span<const Dimension> profiled_dimensions(Deployment deployment);

inline constexpr double kDefaultRho = 0.05;
inline constexpr int kDefaultStlPeriod = 144;  // one day of 10-minute samples

/// Default binarization cutoff for a strategy's raw score.
double default_cutoff(ProfileStrategy s);

// -- per-trace scorers ----------------------------------------------------

struct ThresholdResult {
    int bit = 0;                    // 1 = negotiable
    double duration_fraction = 1.0; // time spent within one std of the max
};

/// Spike-duration rule: with m = max and s = population std, measure the
/// fraction of samples inside [m - s, m]. Short-lived peaks (fraction below
/// rho) mark the dimension negotiable.
ThresholdResult negotiability_threshold(const PerfTrace& trace, double rho);

/// Area under the ECDF of the min-max scaled values over [0, 1]. Spiky
/// traces concentrate mass near 0 and score close to 1; a zero-variance
/// trace scores 1 by convention.
double negotiability_minmax_auc(const PerfTrace& trace);

/// As above but values are scaled by 1/max only, so steady traces collapse
/// onto 1 and score 0 while large rare spikes push the score up.
double negotiability_max_auc(const PerfTrace& trace);

/// Fraction of samples more than three population standard deviations from
/// the mean; 0 for zero-variance traces.
double negotiability_outlier_pct(const PerfTrace& trace);

/// Classical additive decomposition (centered moving-average trend,
/// per-phase seasonal means, residual). Returns
/// max(0, 1 - var(residual)/var(raw)); 1 when the raw variance is zero.
/// Requires at least 2 * period samples.
double negotiability_stl(const PerfTrace& trace, int period);

struct CombinedResult {
    double auc_score = 0.0;
    int threshold_bit = 0;
};

/// MinMax AUC feature next to the threshold bit; binarization uses the bit
/// and keeps the AUC as the raw score.
CombinedResult negotiability_combined(const PerfTrace& trace, double rho);

// -- vectors and groups -----------------------------------------------------

struct NegotiabilityVector {
    Deployment deployment = Deployment::Db;
    std::vector<int> bits;          // 1 = negotiable, profiled-dimension order
    std::vector<double> raw_scores; // pre-binarization strategy scores
};

/// Turns raw scores into bits: AUC and outlier scores at or above the cutoff
/// are negotiable; STL flips (high score = steady = non-negotiable). The
/// Threshold and Combined strategies produce bits directly, so their scores
/// pass through as already-binary values.
NegotiabilityVector binarize(Deployment deployment, ProfileStrategy strategy,
                             std::span<const double> raw_scores,
                             std::span<const double> cutoffs);

struct ProfileOptions {
    ProfileStrategy strategy = ProfileStrategy::Threshold;
    double rho = kDefaultRho;
    int stl_period = kDefaultStlPeriod;
    std::map<Dimension, double> cutoffs;  // empty = strategy default

    double cutoff_for(Dimension d) const;
};

/// Scores every profiled dimension of `set` and binarizes. A dimension
/// without a trace contributes bit 0 and raw score 0.
NegotiabilityVector profile_workload(const PerfTraceSet& set, Deployment deployment,
                                     const ProfileOptions& options);

/// Binary encoding of the bit vector, first profiled dimension as the most
/// significant bit; bijective onto [0, 2^d).
int group_membership(const NegotiabilityVector& vector);

int group_count(Deployment deployment);

struct GroupStats {
    std::vector<int> bits;
    double mean_throttling = 0.0;
    double std_dev = 0.0;
    int member_count = 0;
};

struct GroupModel {
    Deployment deployment = Deployment::Db;
    ProfileOptions profile;
    std::map<int, GroupStats> groups;

    const GroupStats* find(int group_id) const {
        auto it = groups.find(group_id);
        return it == groups.end() ? nullptr : &it->second;
    }
};

struct TrainingExample {
    PerfTraceSet traces;        // instance level, common grid, raw latency
    std::string chosen_sku_id;
};

struct TrainOptions {
    ProfileOptions profile;
    double price_factor = kDefaultOverprovisionFactor;  // over-provision exclusion
    double quantile = 0.95;                             // MI step-one summary
};

/// Learns per-group throttling tolerance from historical choices: each
/// customer's curve gives the chosen SKU's throttling probability, the
/// profiler gives their group, and groups collect mean/std/count.
/// Over-provisioned members are excluded. The deployment is taken from the
/// chosen SKUs, which must all share one.
GroupModel train_groups(std::span<const TrainingExample> dataset, const SkuCatalog& catalog,
                        const TrainOptions& options);

void save_group_model(const GroupModel& model, const std::filesystem::path& path);
std::string group_model_to_json(const GroupModel& model);
GroupModel load_group_model(const std::filesystem::path& path);
GroupModel group_model_from_json(std::string_view text, std::string_view origin = "<memory>");

/// Lloyd's iteration with k-means++ seeding (deterministic for a fixed
/// seed); stops after 100 iterations or when centroids shift < 1e-9.
std::vector<int> kmeans_groups(std::span<const std::vector<double>> vectors, int k,
                               std::uint64_t seed);

}  // namespace rightsize
