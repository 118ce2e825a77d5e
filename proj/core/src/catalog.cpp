#include "rightsize/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "rightsize/error.hpp"

namespace rightsize {

namespace {

using nlohmann::json;

constexpr double kLatencyFloorMs = 1e-6;

double require_positive(const json& node, const char* field, std::string_view where) {
    if (!node.contains(field) || !node[field].is_number())
        raise(Errc::malformed_catalog, std::string(where) + ": missing numeric '" + field + "'");
    double v = node[field].get<double>();
    if (!std::isfinite(v) || v <= 0.0)
        raise(Errc::malformed_catalog, std::string(where) + ": '" + field + "' must be > 0");
    return v;
}

double require_non_negative(const json& node, const char* field, std::string_view where) {
    if (!node.contains(field) || !node[field].is_number())
        raise(Errc::malformed_catalog, std::string(where) + ": missing numeric '" + field + "'");
    double v = node[field].get<double>();
    if (!std::isfinite(v) || v < 0.0)
        raise(Errc::malformed_catalog, std::string(where) + ": '" + field + "' must be >= 0");
    return v;
}

std::string require_string(const json& node, const char* field, std::string_view where) {
    if (!node.contains(field) || !node[field].is_string())
        raise(Errc::malformed_catalog, std::string(where) + ": missing string '" + field + "'");
    return node[field].get<std::string>();
}

ResourceLimits parse_limits(const json& node, std::string_view where) {
    ResourceLimits limits;
    if (!node.is_object())
        raise(Errc::malformed_catalog, std::string(where) + ": 'limits' must be an object");
    static const std::pair<const char*, Dimension> keys[] = {
        {"cpu", Dimension::Cpu},
        {"memory_gib", Dimension::Memory},
        {"iops", Dimension::Iops},
        {"io_latency_ms", Dimension::IoLatency},
        {"log_rate_mibps", Dimension::LogRate},
        {"storage_gib", Dimension::Storage},
    };
    for (const auto& [key, dim] : keys) {
        if (!node.contains(key)) continue;
        if (!node[key].is_number())
            raise(Errc::malformed_catalog, std::string(where) + ": '" + key + "' must be numeric");
        double v = node[key].get<double>();
        if (!std::isfinite(v) || v < 0.0)
            raise(Errc::malformed_catalog, std::string(where) + ": '" + key + "' must be >= 0");
        if (dim == Dimension::IoLatency)
            v = 1.0 / std::max(v, kLatencyFloorMs);  // ms -> capability in 1/ms
        limits.set(dim, v);
    }
    for (auto it = node.begin(); it != node.end(); ++it) {
        bool known = false;
        for (const auto& [key, dim] : keys) known = known || it.key() == key;
        if (!known)
            raise(Errc::malformed_catalog, std::string(where) + ": unknown limit '" + it.key() + "'");
    }
    return limits;
}

}  // namespace

std::string_view to_string(Deployment d) {
    return d == Deployment::Db ? "db" : "mi";
}

std::optional<Deployment> deployment_from_string(std::string_view name) {
    if (name == "db") return Deployment::Db;
    if (name == "mi") return Deployment::Mi;
    return std::nullopt;
}

std::string_view to_string(ServiceTier t) {
    return t == ServiceTier::GeneralPurpose ? "gp" : "bc";
}

std::optional<ServiceTier> tier_from_string(std::string_view name) {
    if (name == "gp") return ServiceTier::GeneralPurpose;
    if (name == "bc") return ServiceTier::BusinessCritical;
    return std::nullopt;
}

const SkuSpec* SkuCatalog::find(std::string_view id) const {
    for (const auto& sku : skus)
        if (sku.id == id) return &sku;
    return nullptr;
}

std::vector<SkuSpec> SkuCatalog::by_deployment(Deployment d) const {
    std::vector<SkuSpec> out;
    for (const auto& sku : skus)
        if (sku.deployment == d) out.push_back(sku);
    return out;
}

std::vector<StorageTier> default_storage_tiers() {
    // P10/P20/P50/P60 are published premium-disk figures; P30/P40 fill the
    // middle of the range (sample data).
    return {
        {"P10", 0.0, 128.0, 500.0, 100.0},
        {"P20", 128.0, 512.0, 2300.0, 150.0},
        {"P30", 512.0, 1024.0, 5000.0, 200.0},
        {"P40", 1024.0, 2048.0, 7500.0, 250.0},
        {"P50", 2048.0, 4096.0, 7500.0, 250.0},
        {"P60", 4096.0, 8192.0, 12500.0, 480.0},
    };
}

SkuCatalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::invalid_argument, "cannot open catalog " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_catalog(buf.str(), path.string());
}

SkuCatalog parse_catalog(std::string_view json_text, std::string_view origin) {
    json doc = json::parse(json_text, nullptr, false);
    if (doc.is_discarded())
        raise(Errc::malformed_catalog, std::string(origin) + ": invalid JSON");
    if (!doc.is_object() || !doc.contains("skus") || !doc["skus"].is_array())
        raise(Errc::malformed_catalog, std::string(origin) + ": expected top-level 'skus' array");

    SkuCatalog catalog;
    std::set<std::string> seen_ids;
    for (const auto& node : doc["skus"]) {
        SkuSpec sku;
        sku.id = require_string(node, "id", origin);
        std::string where = std::string(origin) + " sku '" + sku.id + "'";
        if (!seen_ids.insert(sku.id).second)
            raise(Errc::duplicate_sku_id, where);
        auto deployment = deployment_from_string(require_string(node, "deployment", where));
        if (!deployment) raise(Errc::malformed_catalog, where + ": deployment must be db|mi");
        sku.deployment = *deployment;
        auto tier = tier_from_string(require_string(node, "tier", where));
        if (!tier) raise(Errc::malformed_catalog, where + ": tier must be gp|bc");
        sku.tier = *tier;
        sku.vcores = static_cast<int>(require_positive(node, "vcores", where));
        sku.monthly_price = require_positive(node, "monthly_price", where);
        if (!node.contains("limits"))
            raise(Errc::malformed_catalog, where + ": missing 'limits'");
        sku.limits = parse_limits(node["limits"], where);
        catalog.skus.push_back(std::move(sku));
    }
    if (catalog.skus.empty()) raise(Errc::empty_catalog, std::string(origin));

    if (doc.contains("storage_tiers")) {
        if (!doc["storage_tiers"].is_array())
            raise(Errc::malformed_catalog, std::string(origin) + ": 'storage_tiers' must be an array");
        for (const auto& node : doc["storage_tiers"]) {
            StorageTier tier;
            tier.name = require_string(node, "name", origin);
            std::string where = std::string(origin) + " tier '" + tier.name + "'";
            tier.min_gib_exclusive = require_non_negative(node, "min_gib_exclusive", where);
            tier.max_gib_inclusive = require_positive(node, "max_gib_inclusive", where);
            tier.iops = require_positive(node, "iops", where);
            tier.throughput_mibps = require_positive(node, "throughput_mibps", where);
            if (tier.max_gib_inclusive <= tier.min_gib_exclusive)
                raise(Errc::malformed_catalog, where + ": empty size range");
            catalog.storage_tiers.push_back(std::move(tier));
        }
    }

    bool any_mi = std::any_of(catalog.skus.begin(), catalog.skus.end(),
                              [](const SkuSpec& s) { return s.deployment == Deployment::Mi; });
    if (any_mi && catalog.storage_tiers.empty())
        raise(Errc::malformed_catalog,
              std::string(origin) + ": MI SKUs present but no storage tier table");

    // The tier table must cover a contiguous span with monotone capabilities,
    // otherwise tier lookup would have holes.
    auto& tiers = catalog.storage_tiers;
    std::sort(tiers.begin(), tiers.end(), [](const StorageTier& a, const StorageTier& b) {
        return a.min_gib_exclusive < b.min_gib_exclusive;
    });
    for (std::size_t i = 1; i < tiers.size(); ++i) {
        const auto& prev = tiers[i - 1];
        const auto& cur = tiers[i];
        if (cur.min_gib_exclusive < prev.max_gib_inclusive)
            raise(Errc::malformed_catalog, std::string(origin) + ": tiers '" + prev.name +
                                               "' and '" + cur.name + "' overlap");
        if (cur.min_gib_exclusive > prev.max_gib_inclusive)
            raise(Errc::malformed_catalog, std::string(origin) + ": gap between tiers '" +
                                               prev.name + "' and '" + cur.name + "'");
        if (cur.iops < prev.iops || cur.throughput_mibps < prev.throughput_mibps)
            raise(Errc::malformed_catalog,
                  std::string(origin) + ": tier capabilities must be non-decreasing");
    }
    return catalog;
}

const StorageTier& storage_tier_for_file(double size_gib, std::span<const StorageTier> tiers) {
    if (tiers.empty()) raise(Errc::malformed_catalog, "empty storage tier table");
    if (size_gib <= 0.0) raise(Errc::invalid_argument, "file size must be positive");
    for (const auto& tier : tiers)
        if (tier.contains(size_gib)) return tier;
    raise(Errc::file_too_large, std::to_string(size_gib) + " GiB exceeds the largest tier (" +
                                    tiers.back().name + ", " +
                                    std::to_string(tiers.back().max_gib_inclusive) + " GiB)");
}

ResourceLimits mi_effective_limits(const SkuSpec& sku, const FileLayout& layout,
                                   std::span<const StorageTier> tiers) {
    if (sku.deployment != Deployment::Mi)
        raise(Errc::invalid_argument, "effective limits requested for non-MI SKU " + sku.id);
    if (layout.file_sizes_gib.empty())
        raise(Errc::invalid_argument, "file layout must name at least one file");
    double total_iops = 0.0;
    double total_throughput = 0.0;
    for (double size : layout.file_sizes_gib) {
        const StorageTier& tier = storage_tier_for_file(size, tiers);
        total_iops += tier.iops;
        total_throughput += tier.throughput_mibps;
    }
    ResourceLimits limits = sku.limits;
    limits.set(Dimension::Iops, total_iops);
    limits.set(Dimension::LogRate, total_throughput);  // instance file-throughput bound, MiB/s
    return limits;
}

MiFilterResult filter_mi_skus(const SkuCatalog& catalog, const FileLayout& layout,
                              const WorkloadSummary& summary) {
    const double storage_req = summary.value_or_zero(Dimension::Storage);
    const double iops_req = summary.value_or_zero(Dimension::Iops);
    const double throughput_req = summary.value_or_zero(Dimension::LogRate);

    auto qualifies = [&](const SkuSpec& sku) {
        ResourceLimits eff = sku.tier == ServiceTier::GeneralPurpose
                                 ? mi_effective_limits(sku, layout, catalog.storage_tiers)
                                 : sku.limits;
        auto storage = eff.get(Dimension::Storage);
        if (storage && *storage < storage_req) return false;
        auto iops = eff.get(Dimension::Iops);
        if (iops && *iops < kMiIopsThroughputCoverage * iops_req) return false;
        auto throughput = eff.get(Dimension::LogRate);
        if (throughput && *throughput < kMiIopsThroughputCoverage * throughput_req) return false;
        return true;
    };

    MiFilterResult result;
    for (const auto& sku : catalog.skus)
        if (sku.deployment == Deployment::Mi && sku.tier == ServiceTier::GeneralPurpose &&
            qualifies(sku))
            result.candidates.push_back(sku);

    if (result.candidates.empty()) {
        for (const auto& sku : catalog.skus)
            if (sku.deployment == Deployment::Mi && sku.tier == ServiceTier::BusinessCritical &&
                qualifies(sku))
                result.candidates.push_back(sku);
        result.escalated_to_bc = !result.candidates.empty();
        if (result.candidates.empty()) {
            std::string binding = "storage " + std::to_string(storage_req) + " GiB, iops " +
                                  std::to_string(iops_req) + ", throughput " +
                                  std::to_string(throughput_req) + " MiB/s";
            raise(Errc::no_candidate_sku, "no MI SKU covers the requirement (" + binding + ")");
        }
    }
    return result;
}

}  // namespace rightsize
