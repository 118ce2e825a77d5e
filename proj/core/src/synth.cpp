#include "rightsize/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rightsize/error.hpp"

namespace rightsize {

std::string_view to_string(TracePattern p) {
    switch (p) {
        case TracePattern::Steady: return "steady";
        case TracePattern::Spiky: return "spiky";
        case TracePattern::Seasonal: return "seasonal";
        case TracePattern::Ramp: return "ramp";
    }
    return "?";
}

std::optional<TracePattern> trace_pattern_from_string(std::string_view name) {
    for (TracePattern p : {TracePattern::Steady, TracePattern::Spiky, TracePattern::Seasonal,
                           TracePattern::Ramp})
        if (name == to_string(p)) return p;
    return std::nullopt;
}

std::vector<double> synth_values(const SynthSpec& spec) {
    if (spec.samples < 1) raise(Errc::invalid_argument, "samples must be >= 1");
    if (spec.period < 1) raise(Errc::invalid_argument, "period must be >= 1");
    if (spec.spike_rate < 0.0 || spec.spike_rate > 1.0)
        raise(Errc::invalid_argument, "spike rate must be in [0, 1]");

    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(spec.samples));
    const double n = static_cast<double>(spec.samples);
    for (int i = 0; i < spec.samples; ++i) {
        double v = spec.level;
        switch (spec.pattern) {
            case TracePattern::Steady:
                break;
            case TracePattern::Spiky:
                if (uniform(rng) < spec.spike_rate) v += spec.spike_height;
                break;
            case TracePattern::Seasonal:
                v += spec.amplitude *
                     std::sin(2.0 * std::numbers::pi * static_cast<double>(i) /
                              static_cast<double>(spec.period));
                break;
            case TracePattern::Ramp:
                v += spec.amplitude *
                     (spec.samples > 1 ? static_cast<double>(i) / (n - 1.0) : 0.0);
                break;
        }
        if (spec.noise > 0.0) v += spec.noise * gauss(rng);
        values.push_back(std::max(0.0, v));
    }
    return values;
}

PerfTrace synth_trace(Dimension dimension, const SynthSpec& spec) {
    PerfTrace trace;
    trace.dimension = dimension;
    auto values = synth_values(spec);
    trace.samples.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        trace.samples.push_back({spec.start + spec.interval * static_cast<long>(i), values[i]});
    return trace;
}

PerfTraceSet synth_trace_set(std::string object_id, Level level, Dimension dimension,
                             const SynthSpec& spec) {
    PerfTraceSet set;
    set.object_id = std::move(object_id);
    set.level = level;
    set.traces[dimension] = synth_trace(dimension, spec);
    return set;
}

}  // namespace rightsize
