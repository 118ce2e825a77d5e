#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace rightsize {

/// Resource dimensions tracked by the engine. IoLatency is the odd one out:
/// raw traces and catalog entries carry latency in milliseconds, but all
/// internal comparisons happen on the inverse (a per-ms rate) so that every
/// dimension is bounded from above.
enum class Dimension {
    Cpu,        // vCores consumed
    Memory,     // GiB
    Iops,       // ops/s
    IoLatency,  // raw: ms; internal: 1/ms
    LogRate,    // MiB/s
    Storage,    // GiB
};

inline constexpr int kDimensionCount = 6;

inline constexpr std::array<Dimension, kDimensionCount> all_dimensions{
    Dimension::Cpu,     Dimension::Memory,  Dimension::Iops,
    Dimension::IoLatency, Dimension::LogRate, Dimension::Storage,
};

std::string_view to_string(Dimension d);
std::optional<Dimension> dimension_from_string(std::string_view name);

/// True only for IoLatency: usable headroom shrinks as the raw value grows.
inline constexpr bool is_inverse_bounded(Dimension d) {
    return d == Dimension::IoLatency;
}

inline constexpr std::size_t dimension_index(Dimension d) {
    return static_cast<std::size_t>(d);
}

}  // namespace rightsize
