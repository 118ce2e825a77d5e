#include "rightsize/pipeline.hpp"

#include <algorithm>

#include "rightsize/error.hpp"

namespace rightsize {

namespace {

/// Resamples every trace of every set onto one grid anchored at the earliest
/// timestamp seen and spanning to the latest.
void align_to_common_grid(std::vector<PerfTraceSet>& sets, Duration interval) {
    bool any = false;
    Timestamp first{Timestamp::duration::max()};
    Timestamp last{Timestamp::duration::min()};
    for (const auto& set : sets)
        for (const auto& [dim, trace] : set.traces) {
            if (trace.samples.empty()) continue;
            any = true;
            first = std::min(first, trace.samples.front().timestamp);
            last = std::max(last, trace.samples.back().timestamp);
        }
    if (!any) raise(Errc::empty_trace, "no samples in input");
    std::size_t buckets = static_cast<std::size_t>((last - first) / interval) + 1;
    for (auto& set : sets)
        for (auto& [dim, trace] : set.traces) trace = resample_onto(trace, first, interval, buckets);
}

std::vector<PerfTraceSet> take_level(std::vector<PerfTraceSet>& sets, Level level) {
    std::vector<PerfTraceSet> out;
    for (auto& set : sets)
        if (set.level == level) out.push_back(std::move(set));
    std::erase_if(sets, [&](const PerfTraceSet& s) { return s.level == level; });
    return out;
}

}  // namespace

PerfTraceSet reduce_to_instance(std::vector<PerfTraceSet> sets, Duration interval,
                                const std::string& aggregate_id) {
    if (sets.empty()) raise(Errc::empty_trace, "no trace sets in input");
    align_to_common_grid(sets, interval);

    auto instances = take_level(sets, Level::Instance);
    if (instances.size() > 1)
        raise(Errc::invalid_argument, "input holds " + std::to_string(instances.size()) +
                                          " instance-level objects; assess one at a time");
    if (instances.size() == 1) return std::move(instances.front());

    auto databases = take_level(sets, Level::Database);
    auto files = take_level(sets, Level::File);
    if (!files.empty()) {
        std::string id = files.size() == 1 ? files.front().object_id : aggregate_id;
        databases.push_back(aggregate(files, Level::Database, id));
    }
    if (databases.empty()) raise(Errc::empty_trace, "no usable trace sets in input");
    std::string id = databases.size() == 1 ? databases.front().object_id : aggregate_id;
    return aggregate(databases, Level::Instance, id);
}

PerfTraceSet with_inverted_latency(const PerfTraceSet& set) {
    PerfTraceSet out = set;
    auto it = out.traces.find(Dimension::IoLatency);
    if (it != out.traces.end()) it->second = invert_latency(it->second);
    return out;
}

FileLayout derive_layout(const PerfTraceSet& raw_set) {
    double size = 1.0;
    if (const PerfTrace* storage = raw_set.find(Dimension::Storage)) {
        for (const auto& sample : storage->samples) size = std::max(size, sample.value);
    }
    return FileLayout{{size}};
}

CandidateSet assemble_candidates(const SkuCatalog& catalog, Deployment deployment,
                                 const std::optional<FileLayout>& layout,
                                 const PerfTraceSet& raw_set, double quantile) {
    CandidateSet result;
    if (deployment == Deployment::Db) {
        for (const auto& sku : catalog.by_deployment(Deployment::Db))
            result.candidates.push_back({sku, sku.limits});
        if (result.candidates.empty())
            raise(Errc::no_candidate_sku, "catalog has no DB SKUs");
        return result;
    }

    FileLayout effective_layout = layout ? *layout : derive_layout(raw_set);
    WorkloadSummary summary = summarize(with_inverted_latency(raw_set), quantile);
    MiFilterResult filtered = filter_mi_skus(catalog, effective_layout, summary);
    result.escalated_to_bc = filtered.escalated_to_bc;
    for (const auto& sku : filtered.candidates) {
        ResourceLimits limits = sku.tier == ServiceTier::GeneralPurpose
                                    ? mi_effective_limits(sku, effective_layout,
                                                          catalog.storage_tiers)
                                    : sku.limits;
        result.candidates.push_back({sku, limits});
    }
    return result;
}

PerfTraceSet slice(const PerfTraceSet& set, std::size_t start, std::size_t count) {
    PerfTraceSet out;
    out.object_id = set.object_id;
    out.level = set.level;
    for (const auto& [dim, trace] : set.traces) {
        if (start >= trace.samples.size())
            raise(Errc::invalid_argument, "slice start beyond trace");
        PerfTrace sliced;
        sliced.dimension = dim;
        auto begin = trace.samples.begin() + static_cast<std::ptrdiff_t>(start);
        auto end = begin + static_cast<std::ptrdiff_t>(
                               std::min(count, trace.samples.size() - start));
        sliced.samples.assign(begin, end);
        out.traces[dim] = std::move(sliced);
    }
    return out;
}

std::size_t grid_size(const PerfTraceSet& set) {
    if (set.traces.empty()) return 0;
    return set.traces.begin()->second.samples.size();
}

}  // namespace rightsize
