#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rightsize/ingest.hpp"
#include "rightsize/limits.hpp"

namespace rightsize {

enum class Deployment { Db, Mi };
enum class ServiceTier { GeneralPurpose, BusinessCritical };

std::string_view to_string(Deployment d);
std::optional<Deployment> deployment_from_string(std::string_view name);
std::string_view to_string(ServiceTier t);
std::optional<ServiceTier> tier_from_string(std::string_view name);

struct SkuSpec {
    std::string id;
    Deployment deployment = Deployment::Db;
    ServiceTier tier = ServiceTier::GeneralPurpose;
    int vcores = 0;
    ResourceLimits limits;         // IoLatency already inverted to 1/ms
    double monthly_price = 0.0;
};

/// One premium-disk size class. A file of `size` GiB lands on the tier with
/// min_gib_exclusive < size <= max_gib_inclusive (the first tier also admits
/// size == 0 in principle; file sizes are positive anyway).
struct StorageTier {
    std::string name;
    double min_gib_exclusive = 0.0;
    double max_gib_inclusive = 0.0;
    double iops = 0.0;
    double throughput_mibps = 0.0;

    bool contains(double size_gib) const {
        return size_gib > min_gib_exclusive && size_gib <= max_gib_inclusive;
    }
};

struct FileLayout {
    std::vector<double> file_sizes_gib;  // one entry per data file, each > 0
};

struct SkuCatalog {
    std::vector<SkuSpec> skus;
    std::vector<StorageTier> storage_tiers;

    const SkuSpec* find(std::string_view id) const;
    std::vector<SkuSpec> by_deployment(Deployment d) const;
};

/// The tier table shipped with the engine. The P10/P20/P50/P60 rows carry
/// published premium-disk figures; P30/P40 are sample fill-ins for the
/// middle of the range.
std::vector<StorageTier> default_storage_tiers();

/// Loads and validates a catalog document (see README for the JSON schema).
/// Latency limits are given in ms and inverted to 1/ms capabilities here.
SkuCatalog load_catalog(const std::filesystem::path& path);
SkuCatalog parse_catalog(std::string_view json_text, std::string_view origin = "<memory>");

/// Looks up the tier whose size range contains `size_gib`.
/// Throws file_too_large past the last tier.
const StorageTier& storage_tier_for_file(double size_gib, std::span<const StorageTier> tiers);

/// Effective instance limits for an MI SKU under a fixed file layout: the
/// Iops limit becomes the sum of the per-file tier IOPS, and the summed
/// per-file tier throughput (MiB/s) takes over the LogRate slot as the
/// instance's file-throughput bound. Other limits are unchanged.
ResourceLimits mi_effective_limits(const SkuSpec& sku, const FileLayout& layout,
                                   std::span<const StorageTier> tiers);

struct MiFilterResult {
    std::vector<SkuSpec> candidates;
    bool escalated_to_bc = false;
};

/// Step-one MI filtering: keep SKUs whose storage limit covers 100% of the
/// storage requirement and whose effective IOPS and file throughput cover at
/// least 95% of theirs. General Purpose SKUs are tried first; if none
/// qualify the search escalates to Business Critical.
MiFilterResult filter_mi_skus(const SkuCatalog& catalog, const FileLayout& layout,
                              const WorkloadSummary& summary);

inline constexpr double kMiIopsThroughputCoverage = 0.95;

}  // namespace rightsize
