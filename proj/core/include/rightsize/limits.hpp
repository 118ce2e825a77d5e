#pragma once

#include <array>
#include <optional>

#include "rightsize/dimension.hpp"

namespace rightsize {

/// Per-dimension resource caps. An absent dimension is unconstrained.
/// IoLatency is stored as a capability rate in 1/ms (the catalog loader
/// inverts the millisecond figure), so every present limit is an upper bound.
class ResourceLimits {
public:
    std::optional<double> get(Dimension d) const { return values_[dimension_index(d)]; }
    bool contains(Dimension d) const { return values_[dimension_index(d)].has_value(); }

    ResourceLimits& set(Dimension d, double limit) {
        values_[dimension_index(d)] = limit;
        return *this;
    }

    friend bool operator==(const ResourceLimits&, const ResourceLimits&) = default;

private:
    std::array<std::optional<double>, kDimensionCount> values_{};
};

}  // namespace rightsize
