#include "rightsize/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include "rightsize/error.hpp"

namespace rightsize {

namespace {

using std::chrono::days;
using std::chrono::hh_mm_ss;
using std::chrono::seconds;
using std::chrono::sys_days;
using std::chrono::year_month_day;

bool parse_int(std::string_view text, int& out) {
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_double(std::string_view text, double& out) {
    if (text.empty()) return false;
    std::string buf(text);
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    return end == buf.c_str() + buf.size() && std::isfinite(out);
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

std::string_view to_string(Level level) {
    switch (level) {
        case Level::File: return "file";
        case Level::Database: return "database";
        case Level::Instance: return "instance";
    }
    return "?";
}

std::optional<Level> level_from_string(std::string_view name) {
    if (name == "file") return Level::File;
    if (name == "database") return Level::Database;
    if (name == "instance") return Level::Instance;
    return std::nullopt;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    text = trim(text);
    // YYYY-MM-DD{T }HH:MM:SS[.frac][Z|+00:00]
    if (text.size() < 19) return std::nullopt;
    if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
        text[13] != ':' || text[16] != ':')
        return std::nullopt;
    int y, mo, d, h, mi, s;
    if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), mo) ||
        !parse_int(text.substr(8, 2), d) || !parse_int(text.substr(11, 2), h) ||
        !parse_int(text.substr(14, 2), mi) || !parse_int(text.substr(17, 2), s))
        return std::nullopt;

    std::string_view rest = text.substr(19);
    if (!rest.empty() && rest[0] == '.') {
        std::size_t i = 1;
        while (i < rest.size() && std::isdigit(static_cast<unsigned char>(rest[i]))) ++i;
        if (i == 1) return std::nullopt;
        rest = rest.substr(i);  // fractional part truncated; grids are in seconds
    }
    if (!rest.empty() && rest != "Z" && rest != "+00:00") return std::nullopt;

    year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(mo)},
                       std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || s > 60) return std::nullopt;
    return Timestamp{sys_days{ymd} + seconds{h * 3600 + mi * 60 + s}};
}

std::string format_timestamp(Timestamp ts) {
    sys_days day = std::chrono::floor<days>(ts);
    year_month_day ymd{day};
    hh_mm_ss<seconds> tod{ts - day};
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ",
                  static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()), static_cast<long>(tod.hours().count()),
                  static_cast<long>(tod.minutes().count()),
                  static_cast<long>(tod.seconds().count()));
    return buf;
}

std::vector<PerfTraceSet> parse_traces(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::invalid_argument, "cannot open trace file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_traces_text(buf.str(), path.string());
}

std::vector<PerfTraceSet> parse_traces_text(std::string_view csv, std::string_view origin) {
    std::istringstream in{std::string(csv)};
    std::string line;
    if (!std::getline(in, line))
        raise(Errc::empty_trace, "empty trace file " + std::string(origin));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line) != "timestamp,object_id,level,dimension,value")
        raise(Errc::malformed_row,
              std::string(origin) + ": expected header timestamp,object_id,level,dimension,value");

    // (object_id, level) -> dimension -> samples
    std::map<std::pair<std::string, Level>, std::map<Dimension, std::vector<PerfSample>>> grouped;
    std::size_t line_no = 1;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line);
        auto where = [&] { return std::string(origin) + ":" + std::to_string(line_no); };
        if (fields.size() != 5)
            raise(Errc::malformed_row, where() + ": expected 5 fields, got " +
                                           std::to_string(fields.size()));
        auto ts = parse_timestamp(fields[0]);
        if (!ts) raise(Errc::malformed_row, where() + ": bad timestamp '" + std::string(fields[0]) + "'");
        std::string object_id{trim(fields[1])};
        if (object_id.empty()) raise(Errc::malformed_row, where() + ": empty object_id");
        auto level = level_from_string(trim(fields[2]));
        if (!level) raise(Errc::malformed_row, where() + ": bad level '" + std::string(fields[2]) + "'");
        auto dim = dimension_from_string(trim(fields[3]));
        if (!dim)
            raise(Errc::unknown_dimension, where() + ": '" + std::string(trim(fields[3])) + "'");
        double value;
        if (!parse_double(trim(fields[4]), value) || value < 0.0)
            raise(Errc::malformed_row, where() + ": bad value '" + std::string(fields[4]) + "'");
        grouped[{std::move(object_id), *level}][*dim].push_back({*ts, value});
        ++rows;
    }
    if (rows == 0) raise(Errc::empty_trace, std::string(origin) + ": no data rows");

    std::vector<PerfTraceSet> result;
    for (auto& [key, by_dim] : grouped) {
        PerfTraceSet set;
        set.object_id = key.first;
        set.level = key.second;
        for (auto& [dim, samples] : by_dim) {
            std::sort(samples.begin(), samples.end(),
                      [](const PerfSample& a, const PerfSample& b) { return a.timestamp < b.timestamp; });
            for (std::size_t i = 1; i < samples.size(); ++i)
                if (samples[i].timestamp == samples[i - 1].timestamp)
                    raise(Errc::malformed_row,
                          std::string(origin) + ": duplicate timestamp " +
                              format_timestamp(samples[i].timestamp) + " for " + set.object_id +
                              "/" + std::string(to_string(dim)));
            set.traces[dim] = PerfTrace{dim, std::move(samples)};
        }
        result.push_back(std::move(set));
    }
    return result;
}

namespace {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void write_trace_csv(const PerfTraceSet& set, std::ostream& out) {
    out << "timestamp,object_id,level,dimension,value\n";
    for (const auto& [dim, trace] : set.traces)
        for (const auto& sample : trace.samples)
            out << format_timestamp(sample.timestamp) << ',' << set.object_id << ','
                << to_string(set.level) << ',' << to_string(dim) << ','
                << format_value(sample.value) << '\n';
}

void write_trace_csv(const PerfTraceSet& set, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(Errc::invalid_argument, "cannot write " + path.string());
    write_trace_csv(set, out);
}

PerfTrace resample(const PerfTrace& trace, Duration interval) {
    if (trace.samples.empty()) raise(Errc::empty_trace, "resample of empty trace");
    if (interval.count() <= 0) raise(Errc::invalid_argument, "resample interval must be positive");
    Timestamp t0 = trace.samples.front().timestamp;
    auto span = trace.samples.back().timestamp - t0;
    std::size_t buckets = static_cast<std::size_t>(span / interval) + 1;
    return resample_onto(trace, t0, interval, buckets);
}

PerfTrace resample_onto(const PerfTrace& trace, Timestamp t0, Duration interval,
                        std::size_t buckets) {
    if (trace.samples.empty()) raise(Errc::empty_trace, "resample of empty trace");
    if (interval.count() <= 0 || buckets == 0)
        raise(Errc::invalid_argument, "bad resample grid");

    std::vector<double> sums(buckets, 0.0);
    std::vector<std::size_t> counts(buckets, 0);
    for (const auto& sample : trace.samples) {
        if (sample.timestamp < t0) continue;
        auto offset = sample.timestamp - t0;
        std::size_t idx = static_cast<std::size_t>(offset / interval);
        if (idx >= buckets) continue;
        sums[idx] += sample.value;
        ++counts[idx];
    }

    PerfTrace out;
    out.dimension = trace.dimension;
    out.samples.reserve(buckets);
    // Leading empty buckets take the first occupied bucket's value; interior
    // and trailing gaps carry the previous value forward.
    double fill = trace.samples.front().value;
    for (std::size_t i = 0; i < buckets; ++i)
        if (counts[i] > 0) {
            fill = sums[i] / static_cast<double>(counts[i]);
            break;
        }
    for (std::size_t i = 0; i < buckets; ++i) {
        if (counts[i] > 0) fill = sums[i] / static_cast<double>(counts[i]);
        out.samples.push_back({t0 + interval * static_cast<long>(i), fill});
    }
    return out;
}

PerfTrace invert_latency(const PerfTrace& trace) {
    if (trace.dimension != Dimension::IoLatency)
        raise(Errc::invalid_argument, "invert_latency on non-latency trace");
    PerfTrace out = trace;
    for (auto& sample : out.samples)
        sample.value = 1.0 / std::max(sample.value, kLatencyClampMs);
    return out;
}

PerfTraceSet aggregate(std::span<const PerfTraceSet> children, Level target_level,
                       std::string object_id, const AggregateOptions& options) {
    if (children.empty()) raise(Errc::invalid_argument, "aggregate of no children");

    const int child_rank = static_cast<int>(children.front().level);
    if (static_cast<int>(target_level) != child_rank + 1)
        raise(Errc::invalid_argument, "aggregate target must be one level above its children");
    for (const auto& child : children)
        if (child.level != children.front().level)
            raise(Errc::invalid_argument, "aggregate children must share a level");

    // Establish the common grid from the first trace seen.
    const PerfTrace* reference = nullptr;
    for (const auto& child : children) {
        if (child.traces.empty()) continue;
        reference = &child.traces.begin()->second;
        break;
    }
    if (!reference || reference->samples.empty())
        raise(Errc::empty_trace, "aggregate of empty traces");
    const std::size_t n = reference->samples.size();

    for (const auto& child : children)
        for (const auto& [dim, trace] : child.traces) {
            if (trace.samples.size() != n)
                raise(Errc::grid_mismatch, "child " + child.object_id + " trace length " +
                                               std::to_string(trace.samples.size()) + " vs " +
                                               std::to_string(n));
            for (std::size_t i = 0; i < n; ++i)
                if (trace.samples[i].timestamp != reference->samples[i].timestamp)
                    raise(Errc::grid_mismatch, "child " + child.object_id + " grid differs at index " +
                                                   std::to_string(i));
        }

    PerfTraceSet out;
    out.object_id = std::move(object_id);
    out.level = target_level;
    for (Dimension dim : all_dimensions) {
        bool any = false;
        std::vector<double> acc(n, 0.0);
        for (const auto& child : children) {
            const PerfTrace* trace = child.find(dim);
            if (!trace) continue;
            for (std::size_t i = 0; i < n; ++i) {
                double v = trace->samples[i].value;
                if (dim == Dimension::IoLatency)
                    acc[i] = any ? std::max(acc[i], v) : v;  // worst case before inversion
                else
                    acc[i] += v;
            }
            any = true;
        }
        if (!any) continue;
        std::optional<double> cap;
        if (dim == Dimension::Cpu) cap = options.cpu_cap;
        if (dim == Dimension::Memory) cap = options.memory_cap;
        PerfTrace trace;
        trace.dimension = dim;
        trace.samples.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            double v = cap ? std::min(acc[i], *cap) : acc[i];
            trace.samples.push_back({reference->samples[i].timestamp, v});
        }
        out.traces[dim] = std::move(trace);
    }
    return out;
}

double nearest_rank_quantile(std::vector<double> values, double quantile) {
    if (values.empty()) raise(Errc::empty_trace, "quantile of empty series");
    if (quantile <= 0.0 || quantile > 1.0)
        raise(Errc::invalid_argument, "quantile must be in (0, 1]");
    std::sort(values.begin(), values.end());
    auto n = static_cast<double>(values.size());
    auto rank = static_cast<std::size_t>(std::ceil(quantile * n));
    if (rank == 0) rank = 1;
    return values[rank - 1];
}

WorkloadSummary summarize(const PerfTraceSet& set, double quantile) {
    WorkloadSummary summary;
    summary.quantile_used = quantile;
    for (const auto& [dim, trace] : set.traces) {
        std::vector<double> values;
        values.reserve(trace.samples.size());
        for (const auto& sample : trace.samples) values.push_back(sample.value);
        summary.values[dim] = nearest_rank_quantile(std::move(values), quantile);
    }
    return summary;
}

}  // namespace rightsize
