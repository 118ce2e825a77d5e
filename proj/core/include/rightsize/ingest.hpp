#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rightsize/dimension.hpp"

namespace rightsize {

using Timestamp = std::chrono::sys_seconds;
using Duration = std::chrono::seconds;

/// Default sampling interval of the collection agent: one sample
/// every 10 minutes.
inline constexpr Duration kDefaultInterval{600};

enum class Level { File, Database, Instance };

std::string_view to_string(Level level);
std::optional<Level> level_from_string(std::string_view name);

struct PerfSample {
    Timestamp timestamp;
    double value = 0.0;
};

struct PerfTrace {
    Dimension dimension = Dimension::Cpu;
    std::vector<PerfSample> samples;  // strictly increasing timestamps
};

/// All traces of one monitored object. After resampling onto a common grid
/// every trace has the same length and the same timestamps.
struct PerfTraceSet {
    std::string object_id;
    Level level = Level::Instance;
    std::map<Dimension, PerfTrace> traces;

    const PerfTrace* find(Dimension d) const {
        auto it = traces.find(d);
        return it == traces.end() ? nullptr : &it->second;
    }
};

/// One scalar per dimension, produced by collapsing each trace to an
/// empirical quantile (nearest-rank; quantile 1 is the max).
struct WorkloadSummary {
    std::map<Dimension, double> values;
    double quantile_used = 0.95;

    double value_or_zero(Dimension d) const {
        auto it = values.find(d);
        return it == values.end() ? 0.0 : it->second;
    }
};

// -- timestamp helpers --------------------------------------------------

/// Parses ISO-8601 UTC ("2024-01-07T12:30:00Z", optional fractional seconds,
/// "Z" or "+00:00" suffix). Returns nullopt on anything else.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

// -- operations ----------------------------------------------------------

/// Reads a trace CSV (`timestamp,object_id,level,dimension,value`, header
/// required) and groups rows into one PerfTraceSet per (object_id, level),
/// each trace sorted by timestamp.
std::vector<PerfTraceSet> parse_traces(const std::filesystem::path& path);
std::vector<PerfTraceSet> parse_traces_text(std::string_view csv, std::string_view origin = "<memory>");

void write_trace_csv(const PerfTraceSet& set, std::ostream& out);
void write_trace_csv(const PerfTraceSet& set, const std::filesystem::path& path);

/// Buckets samples onto a uniform grid anchored at the first timestamp.
/// Each bucket holds the mean of the samples that fall in it; empty buckets
/// carry the previous bucket's value forward.
PerfTrace resample(const PerfTrace& trace, Duration interval = kDefaultInterval);

/// Same bucketing against an explicit grid [t0, t0 + buckets * interval).
/// Buckets before the trace's first sample take the first bucket's value.
PerfTrace resample_onto(const PerfTrace& trace, Timestamp t0, Duration interval, std::size_t buckets);

/// Replaces each latency value v (ms) with 1/v (per-ms), clamping zeros to
/// 1e-6 ms first. After this the dimension is an ordinary upper-bounded one.
PerfTrace invert_latency(const PerfTrace& trace);

inline constexpr double kLatencyClampMs = 1e-6;

struct AggregateOptions {
    std::optional<double> cpu_cap;     // observed host capacity, if known
    std::optional<double> memory_cap;
};

/// Rolls children one level up: Iops/LogRate/Storage and Cpu/Memory are
/// summed per timestamp (Cpu/Memory optionally capped); IoLatency takes the
/// per-timestamp maximum of the raw latencies. Children must share the grid.
PerfTraceSet aggregate(std::span<const PerfTraceSet> children, Level target_level,
                       std::string object_id, const AggregateOptions& options = {});

WorkloadSummary summarize(const PerfTraceSet& set, double quantile);

/// Nearest-rank quantile of an unsorted series; quantile in (0, 1].
double nearest_rank_quantile(std::vector<double> values, double quantile);

}  // namespace rightsize
