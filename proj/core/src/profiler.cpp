#include "rightsize/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rightsize/error.hpp"
#include "rightsize/pipeline.hpp"

namespace rightsize {

namespace {

using nlohmann::json;

std::vector<double> values_of(const PerfTrace& trace) {
    std::vector<double> v;
    v.reserve(trace.samples.size());
    for (const auto& s : trace.samples) v.push_back(s.value);
    return v;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_variance(const std::vector<double>& v, double mean) {
    double acc = 0.0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(v.size());
}

/// Exact area under the ECDF step function of `sorted` over [lo, hi].
double ecdf_area(const std::vector<double>& sorted, double lo, double hi) {
    const auto n = static_cast<double>(sorted.size());
    double area = 0.0;
    double x = lo;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double next = std::clamp(sorted[i], lo, hi);
        area += (next - x) * (static_cast<double>(i) / n);
        x = next;
    }
    area += (hi - x) * 1.0;
    return area;
}

}  // namespace

std::string_view to_string(ProfileStrategy s) {
    switch (s) {
        case ProfileStrategy::Threshold: return "threshold";
        case ProfileStrategy::MinMaxAuc: return "minmax-auc";
        case ProfileStrategy::MaxAuc: return "max-auc";
        case ProfileStrategy::OutlierPct: return "outlier";
        case ProfileStrategy::StlVar: return "stl";
        case ProfileStrategy::MinMaxAucPlusThreshold: return "combined";
    }
    return "?";
}

std::optional<ProfileStrategy> profile_strategy_from_string(std::string_view name) {
    for (ProfileStrategy s : {ProfileStrategy::Threshold, ProfileStrategy::MinMaxAuc,
                              ProfileStrategy::MaxAuc, ProfileStrategy::OutlierPct,
                              ProfileStrategy::StlVar, ProfileStrategy::MinMaxAucPlusThreshold})
        if (name == to_string(s)) return s;
    return std::nullopt;
}

std::span<const Dimension> profiled_dimensions(Deployment deployment) {
    static constexpr Dimension db[] = {Dimension::Cpu, Dimension::Memory, Dimension::Iops,
                                       Dimension::LogRate};
    static constexpr Dimension mi[] = {Dimension::Cpu, Dimension::Memory, Dimension::Iops};
    return deployment == Deployment::Db ? std::span<const Dimension>(db)
                                        : std::span<const Dimension>(mi);
}

double default_cutoff(ProfileStrategy s) {
    switch (s) {
        case ProfileStrategy::MinMaxAuc:
        case ProfileStrategy::MaxAuc:
            return 0.8;
        case ProfileStrategy::OutlierPct:
            return 0.01;
        case ProfileStrategy::StlVar:
            return 0.5;
        case ProfileStrategy::Threshold:
        case ProfileStrategy::MinMaxAucPlusThreshold:
            return 0.5;  // unused: bits come straight from the threshold rule
    }
    return 0.5;
}

ThresholdResult negotiability_threshold(const PerfTrace& trace, double rho) {
    if (trace.samples.empty()) raise(Errc::empty_trace, "threshold scorer on empty trace");
    if (rho <= 0.0 || rho >= 1.0) raise(Errc::invalid_argument, "rho must be in (0, 1)");
    auto v = values_of(trace);
    double m = *std::max_element(v.begin(), v.end());
    double s = std::sqrt(population_variance(v, mean_of(v)));
    std::size_t inside = 0;
    for (double x : v)
        if (x >= m - s) ++inside;
    double fraction = static_cast<double>(inside) / static_cast<double>(v.size());
    return {fraction < rho ? 1 : 0, fraction};
}

double negotiability_minmax_auc(const PerfTrace& trace) {
    if (trace.samples.empty()) raise(Errc::empty_trace, "auc scorer on empty trace");
    auto v = values_of(trace);
    double lo = *std::min_element(v.begin(), v.end());
    double hi = *std::max_element(v.begin(), v.end());
    if (hi == lo) return 1.0;  // zero-variance: no spike ever leaves the band
    for (double& x : v) x = (x - lo) / (hi - lo);
    std::sort(v.begin(), v.end());
    return ecdf_area(v, 0.0, 1.0);
}

double negotiability_max_auc(const PerfTrace& trace) {
    if (trace.samples.empty()) raise(Errc::empty_trace, "auc scorer on empty trace");
    auto v = values_of(trace);
    double hi = *std::max_element(v.begin(), v.end());
    if (hi <= 0.0) return 0.0;  // all-zero trace degenerates like a constant one
    for (double& x : v) x /= hi;
    std::sort(v.begin(), v.end());
    return ecdf_area(v, 0.0, 1.0);
}

double negotiability_outlier_pct(const PerfTrace& trace) {
    if (trace.samples.empty()) raise(Errc::empty_trace, "outlier scorer on empty trace");
    auto v = values_of(trace);
    double mean = mean_of(v);
    double s = std::sqrt(population_variance(v, mean));
    if (s == 0.0) return 0.0;
    std::size_t outliers = 0;
    for (double x : v)
        if (std::abs(x - mean) > 3.0 * s) ++outliers;
    return static_cast<double>(outliers) / static_cast<double>(v.size());
}

double negotiability_stl(const PerfTrace& trace, int period) {
    if (period < 2) raise(Errc::invalid_argument, "stl period must be >= 2");
    const auto n = trace.samples.size();
    if (n < 2 * static_cast<std::size_t>(period))
        raise(Errc::trace_too_short, "stl needs at least 2*period samples, got " +
                                         std::to_string(n));
    auto v = values_of(trace);
    double raw_var = population_variance(v, mean_of(v));
    if (raw_var == 0.0) return 1.0;  // nothing left to explain

    // Centered moving-average trend; for an even period the standard 2xm
    // average with half weights on the endpoints.
    const std::size_t half = static_cast<std::size_t>(period) / 2;
    std::vector<double> trend(n, std::numeric_limits<double>::quiet_NaN());
    const bool even = period % 2 == 0;
    for (std::size_t i = half; i + half < n; ++i) {
        double acc = 0.0;
        if (even) {
            acc += 0.5 * v[i - half] + 0.5 * v[i + half];
            for (std::size_t j = i - half + 1; j < i + half; ++j) acc += v[j];
            trend[i] = acc / static_cast<double>(period);
        } else {
            for (std::size_t j = i - half; j <= i + half; ++j) acc += v[j];
            trend[i] = acc / static_cast<double>(period);
        }
    }

    // Per-phase means of the detrended series, recentered to zero.
    std::vector<double> seasonal_sum(static_cast<std::size_t>(period), 0.0);
    std::vector<std::size_t> seasonal_count(static_cast<std::size_t>(period), 0);
    for (std::size_t i = half; i + half < n; ++i) {
        std::size_t phase = i % static_cast<std::size_t>(period);
        seasonal_sum[phase] += v[i] - trend[i];
        ++seasonal_count[phase];
    }
    std::vector<double> seasonal(static_cast<std::size_t>(period), 0.0);
    double seasonal_mean = 0.0;
    std::size_t phases = 0;
    for (std::size_t p = 0; p < seasonal.size(); ++p)
        if (seasonal_count[p] > 0) {
            seasonal[p] = seasonal_sum[p] / static_cast<double>(seasonal_count[p]);
            seasonal_mean += seasonal[p];
            ++phases;
        }
    if (phases > 0) seasonal_mean /= static_cast<double>(phases);
    for (double& s : seasonal) s -= seasonal_mean;

    std::vector<double> residual;
    residual.reserve(n);
    for (std::size_t i = half; i + half < n; ++i)
        residual.push_back(v[i] - trend[i] - seasonal[i % static_cast<std::size_t>(period)]);
    if (residual.empty()) return 1.0;
    double res_var = population_variance(residual, mean_of(residual));
    return std::max(0.0, 1.0 - res_var / raw_var);
}

CombinedResult negotiability_combined(const PerfTrace& trace, double rho) {
    return {negotiability_minmax_auc(trace), negotiability_threshold(trace, rho).bit};
}

NegotiabilityVector binarize(Deployment deployment, ProfileStrategy strategy,
                             std::span<const double> raw_scores,
                             std::span<const double> cutoffs) {
    auto dims = profiled_dimensions(deployment);
    if (raw_scores.size() != dims.size() || cutoffs.size() != dims.size())
        raise(Errc::incomplete_vector, "expected " + std::to_string(dims.size()) +
                                           " scores for " + std::string(to_string(deployment)));
    NegotiabilityVector vector;
    vector.deployment = deployment;
    vector.raw_scores.assign(raw_scores.begin(), raw_scores.end());
    vector.bits.reserve(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
        int bit;
        switch (strategy) {
            case ProfileStrategy::StlVar:
                bit = raw_scores[i] < cutoffs[i] ? 1 : 0;  // steady = non-negotiable
                break;
            case ProfileStrategy::Threshold:
            case ProfileStrategy::MinMaxAucPlusThreshold:
                bit = raw_scores[i] != 0.0 ? 1 : 0;  // already binary
                break;
            default:
                bit = raw_scores[i] >= cutoffs[i] ? 1 : 0;
        }
        vector.bits.push_back(bit);
    }
    return vector;
}

double ProfileOptions::cutoff_for(Dimension d) const {
    auto it = cutoffs.find(d);
    return it == cutoffs.end() ? default_cutoff(strategy) : it->second;
}

NegotiabilityVector profile_workload(const PerfTraceSet& set, Deployment deployment,
                                     const ProfileOptions& options) {
    auto dims = profiled_dimensions(deployment);
    NegotiabilityVector vector;
    vector.deployment = deployment;
    for (Dimension dim : dims) {
        const PerfTrace* trace = set.find(dim);
        if (!trace || trace->samples.empty()) {
            // Nothing observed: treat the dimension as non-negotiable.
            vector.bits.push_back(0);
            vector.raw_scores.push_back(0.0);
            continue;
        }
        double raw = 0.0;
        int bit = 0;
        double cutoff = options.cutoff_for(dim);
        switch (options.strategy) {
            case ProfileStrategy::Threshold: {
                auto r = negotiability_threshold(*trace, options.rho);
                raw = r.duration_fraction;
                bit = r.bit;
                break;
            }
            case ProfileStrategy::MinMaxAuc:
                raw = negotiability_minmax_auc(*trace);
                bit = raw >= cutoff ? 1 : 0;
                break;
            case ProfileStrategy::MaxAuc:
                raw = negotiability_max_auc(*trace);
                bit = raw >= cutoff ? 1 : 0;
                break;
            case ProfileStrategy::OutlierPct:
                raw = negotiability_outlier_pct(*trace);
                bit = raw >= cutoff ? 1 : 0;
                break;
            case ProfileStrategy::StlVar:
                raw = negotiability_stl(*trace, options.stl_period);
                bit = raw < cutoff ? 1 : 0;
                break;
            case ProfileStrategy::MinMaxAucPlusThreshold: {
                auto r = negotiability_combined(*trace, options.rho);
                raw = r.auc_score;
                bit = r.threshold_bit;
                break;
            }
        }
        vector.bits.push_back(bit);
        vector.raw_scores.push_back(raw);
    }
    return vector;
}

int group_membership(const NegotiabilityVector& vector) {
    auto dims = profiled_dimensions(vector.deployment);
    if (vector.bits.size() != dims.size())
        raise(Errc::incomplete_vector, "expected " + std::to_string(dims.size()) + " bits, got " +
                                           std::to_string(vector.bits.size()));
    int id = 0;
    for (int bit : vector.bits) {
        if (bit != 0 && bit != 1) raise(Errc::incomplete_vector, "bits must be 0 or 1");
        id = (id << 1) | bit;
    }
    return id;
}

int group_count(Deployment deployment) {
    return 1 << profiled_dimensions(deployment).size();
}

GroupModel train_groups(std::span<const TrainingExample> dataset, const SkuCatalog& catalog,
                        const TrainOptions& options) {
    if (dataset.empty()) raise(Errc::invalid_argument, "empty training dataset");

    std::optional<Deployment> deployment;
    for (const auto& example : dataset) {
        const SkuSpec* sku = catalog.find(example.chosen_sku_id);
        if (!sku)
            raise(Errc::unknown_sku, example.chosen_sku_id + " (label of " +
                                         example.traces.object_id + ") not in catalog");
        if (!deployment)
            deployment = sku->deployment;
        else if (*deployment != sku->deployment)
            raise(Errc::invalid_argument,
                  "training labels mix deployments; split the dataset per target");
    }

    GroupModel model;
    model.deployment = *deployment;
    model.profile = options.profile;

    std::map<int, std::vector<double>> member_probs;
    std::size_t excluded = 0;
    for (const auto& example : dataset) {
        CandidateSet candidates =
            assemble_candidates(catalog, *deployment, std::nullopt, example.traces,
                                options.quantile);
        PerfTraceSet inverted = with_inverted_latency(example.traces);
        PricePerfCurve curve = build_curve(inverted, candidates.candidates);

        const CurvePoint* chosen = curve.find(example.chosen_sku_id);
        if (!chosen)
            raise(Errc::unknown_sku, example.chosen_sku_id + " missing from the curve of " +
                                         example.traces.object_id);
        if (detect_overprovision(curve, example.chosen_sku_id, options.price_factor)) {
            ++excluded;
            continue;
        }
        NegotiabilityVector vector = profile_workload(example.traces, *deployment, options.profile);
        member_probs[group_membership(vector)].push_back(chosen->throttling_prob);
    }
    if (member_probs.empty())
        raise(Errc::empty_group_model, "all " + std::to_string(excluded) +
                                           " training customers were over-provisioned");

    auto dims = profiled_dimensions(*deployment);
    for (const auto& [group_id, probs] : member_probs) {
        GroupStats stats;
        stats.member_count = static_cast<int>(probs.size());
        stats.mean_throttling = mean_of(probs);
        stats.std_dev = std::sqrt(population_variance(probs, stats.mean_throttling));
        stats.bits.resize(dims.size());
        for (std::size_t i = 0; i < dims.size(); ++i)
            stats.bits[i] = (group_id >> (dims.size() - 1 - i)) & 1;
        model.groups[group_id] = std::move(stats);
    }
    return model;
}

std::string group_model_to_json(const GroupModel& model) {
    json doc;
    doc["deployment"] = std::string(to_string(model.deployment));
    doc["strategy"] = std::string(to_string(model.profile.strategy));
    doc["rho"] = model.profile.rho;
    doc["stl_period"] = model.profile.stl_period;
    json cutoffs = json::object();
    for (Dimension d : profiled_dimensions(model.deployment))
        cutoffs[std::string(to_string(d))] = model.profile.cutoff_for(d);
    doc["cutoffs"] = cutoffs;
    json groups = json::array();
    for (const auto& [id, stats] : model.groups) {
        json g;
        g["id"] = id;
        g["bits"] = stats.bits;
        g["mean_throttling"] = stats.mean_throttling;
        g["std"] = stats.std_dev;
        g["count"] = stats.member_count;
        groups.push_back(g);
    }
    doc["groups"] = groups;
    return doc.dump(2) + "\n";
}

void save_group_model(const GroupModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::invalid_argument, "cannot write " + path.string());
    out << group_model_to_json(model);
}

GroupModel load_group_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::invalid_argument, "cannot open group model " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return group_model_from_json(buf.str(), path.string());
}

GroupModel group_model_from_json(std::string_view text, std::string_view origin) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        raise(Errc::invalid_argument, std::string(origin) + ": invalid group model JSON");
    GroupModel model;
    auto deployment = deployment_from_string(doc.value("deployment", ""));
    if (!deployment) raise(Errc::invalid_argument, std::string(origin) + ": bad deployment");
    model.deployment = *deployment;
    auto strategy = profile_strategy_from_string(doc.value("strategy", ""));
    if (!strategy) raise(Errc::invalid_argument, std::string(origin) + ": bad strategy");
    model.profile.strategy = *strategy;
    model.profile.rho = doc.value("rho", kDefaultRho);
    model.profile.stl_period = doc.value("stl_period", kDefaultStlPeriod);
    if (doc.contains("cutoffs"))
        for (auto it = doc["cutoffs"].begin(); it != doc["cutoffs"].end(); ++it) {
            auto dim = dimension_from_string(it.key());
            if (!dim) raise(Errc::unknown_dimension, std::string(origin) + ": " + it.key());
            model.profile.cutoffs[*dim] = it.value().get<double>();
        }
    if (!doc.contains("groups") || !doc["groups"].is_array())
        raise(Errc::invalid_argument, std::string(origin) + ": missing groups array");
    const int max_groups = group_count(model.deployment);
    for (const auto& g : doc["groups"]) {
        int id = g.value("id", -1);
        if (id < 0 || id >= max_groups)
            raise(Errc::invalid_argument, std::string(origin) + ": group id out of range");
        GroupStats stats;
        stats.mean_throttling = g.value("mean_throttling", 0.0);
        stats.std_dev = g.value("std", 0.0);
        stats.member_count = g.value("count", 0);
        if (g.contains("bits")) stats.bits = g["bits"].get<std::vector<int>>();
        if (stats.mean_throttling < 0.0 || stats.mean_throttling > 1.0)
            raise(Errc::invalid_argument, std::string(origin) + ": mean_throttling out of [0,1]");
        model.groups[id] = std::move(stats);
    }
    if (model.groups.empty())
        raise(Errc::empty_group_model, std::string(origin) + ": no groups");
    return model;
}

std::vector<int> kmeans_groups(std::span<const std::vector<double>> vectors, int k,
                               std::uint64_t seed) {
    const auto n = vectors.size();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        raise(Errc::invalid_argument, "k must be in [1, n]");
    const std::size_t dim = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != dim) raise(Errc::invalid_argument, "feature vectors differ in length");

    std::mt19937_64 rng(seed);
    auto sq_dist = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
        return acc;
    };

    // k-means++ seeding.
    std::vector<std::vector<double>> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    std::uniform_int_distribution<std::size_t> first(0, n - 1);
    centroids.push_back(vectors[first(rng)]);
    std::vector<double> dist(n);
    while (centroids.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = sq_dist(vectors[i], centroids[0]);
            for (std::size_t c = 1; c < centroids.size(); ++c)
                best = std::min(best, sq_dist(vectors[i], centroids[c]));
            dist[i] = best;
            total += best;
        }
        std::size_t pick = 0;
        if (total > 0.0) {
            std::uniform_real_distribution<double> u(0.0, total);
            double target = u(rng);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                acc += dist[i];
                if (acc >= target) {
                    pick = i;
                    break;
                }
            }
        } else {
            pick = first(rng);  // all points coincide with a centroid
        }
        centroids.push_back(vectors[pick]);
    }

    std::vector<int> assignment(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double best = sq_dist(vectors[i], centroids[0]);
            int best_c = 0;
            for (int c = 1; c < k; ++c) {
                double d = sq_dist(vectors[i], centroids[static_cast<std::size_t>(c)]);
                if (d < best) {
                    best = d;
                    best_c = c;
                }
            }
            assignment[i] = best_c;
        }
        std::vector<std::vector<double>> next(static_cast<std::size_t>(k),
                                              std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto c = static_cast<std::size_t>(assignment[i]);
            for (std::size_t j = 0; j < dim; ++j) next[c][j] += vectors[i][j];
            ++counts[c];
        }
        double shift = 0.0;
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
            if (counts[c] == 0) {
                // Re-seed an empty cluster at the farthest point.
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    double d = sq_dist(vectors[i], centroids[static_cast<std::size_t>(assignment[i])]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                next[c] = vectors[far];
            } else {
                for (std::size_t j = 0; j < dim; ++j)
                    next[c][j] /= static_cast<double>(counts[c]);
            }
            shift += sq_dist(next[c], centroids[c]);
            centroids[c] = next[c];
        }
        if (shift < 1e-9 * 1e-9) break;
    }
    return assignment;
}

}  // namespace rightsize
