#pragma once

#include <optional>
#include <vector>

#include "rightsize/catalog.hpp"
#include "rightsize/curve.hpp"
#include "rightsize/ingest.hpp"

namespace rightsize {

/// Reduces whatever mix of levels a trace file contains to one
/// instance-level set: all traces are resampled onto a common grid anchored
/// at the earliest timestamp, then files roll up into databases and
/// databases into the instance. A lone instance-level set passes through
/// (after resampling). Latency stays raw. When several children merge, the
/// result takes `aggregate_id` (single children keep their own id).
PerfTraceSet reduce_to_instance(std::vector<PerfTraceSet> sets,
                                Duration interval = kDefaultInterval,
                                const std::string& aggregate_id = "aggregated");

/// Copy of `set` with the latency trace inverted (no-op without one).
PerfTraceSet with_inverted_latency(const PerfTraceSet& set);

/// Fallback MI file layout when none is supplied (training/backtest data):
/// a single file sized at the observed maximum storage usage, at least 1 GiB.
FileLayout derive_layout(const PerfTraceSet& raw_set);

struct CandidateSet {
    std::vector<Candidate> candidates;
    bool escalated_to_bc = false;
};

/// Candidate SKUs for a deployment target. DB: every DB SKU with its
/// catalog limits. MI: step-one filtering against the summary, then
/// effective limits — file-layout derived for General Purpose, catalog
/// limits for Business Critical.
CandidateSet assemble_candidates(const SkuCatalog& catalog, Deployment deployment,
                                 const std::optional<FileLayout>& layout,
                                 const PerfTraceSet& raw_set, double quantile);

/// Slice of every trace covering buckets [start, start + count).
PerfTraceSet slice(const PerfTraceSet& set, std::size_t start, std::size_t count);

/// Number of samples on the common grid (0 for an empty set).
std::size_t grid_size(const PerfTraceSet& set);

}  // namespace rightsize
