#include "rightsize/dimension.hpp"

namespace rightsize {

std::string_view to_string(Dimension d) {
    switch (d) {
        case Dimension::Cpu: return "cpu";
        case Dimension::Memory: return "memory";
        case Dimension::Iops: return "iops";
        case Dimension::IoLatency: return "io_latency";
        case Dimension::LogRate: return "log_rate";
        case Dimension::Storage: return "storage";
    }
    return "?";
}

std::optional<Dimension> dimension_from_string(std::string_view name) {
    for (Dimension d : all_dimensions)
        if (name == to_string(d)) return d;
    return std::nullopt;
}

}  // namespace rightsize
