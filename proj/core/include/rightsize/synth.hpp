#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "rightsize/ingest.hpp"

namespace rightsize {

enum class TracePattern { Steady, Spiky, Seasonal, Ramp };

std::string_view to_string(TracePattern p);
std::optional<TracePattern> trace_pattern_from_string(std::string_view name);

/// Parameters of the parametric trace generator. Per sample the generator
/// draws one uniform for the spike decision (spiky pattern only), then one
/// normal when noise > 0 — in that order, so tests can replay the stream.
struct SynthSpec {
    TracePattern pattern = TracePattern::Steady;
    int samples = 1008;             // one week of 10-minute samples
    std::uint64_t seed = 0;
    double level = 1.0;             // baseline value
    double noise = 0.0;             // stddev of additive gaussian noise
    double spike_height = 10.0;     // added on spike samples
    double spike_rate = 0.01;       // per-sample spike probability
    double amplitude = 1.0;         // seasonal swing / ramp rise
    int period = 144;               // seasonal period in samples
    Duration interval = kDefaultInterval;
    Timestamp start{};              // grid origin
};

std::vector<double> synth_values(const SynthSpec& spec);

PerfTrace synth_trace(Dimension dimension, const SynthSpec& spec);

PerfTraceSet synth_trace_set(std::string object_id, Level level, Dimension dimension,
                             const SynthSpec& spec);

}  // namespace rightsize
