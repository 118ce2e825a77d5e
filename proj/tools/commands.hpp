#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "rightsize/ingest.hpp"

namespace rightsize::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNoFeasible = 2;

struct RunConfig {
    // file inputs/outputs
    std::filesystem::path traces;
    std::filesystem::path catalog;
    std::filesystem::path profiles;
    std::filesystem::path file_layout;
    std::filesystem::path dataset_dir;
    std::filesystem::path labels;
    std::filesystem::path out;
    std::filesystem::path curve_csv;

    // target and strategies
    std::string target = "db";
    std::string strategy = "doppler";
    std::string method = "threshold";

    // numeric knobs (documented defaults)
    double rho = 0.05;
    double epsilon = 0.001;
    double gamma = 0.95;
    double quantile = 0.95;
    double price_factor = 2.0;
    double cutoff = -1.0;  // < 0 = per-strategy default
    int stl_period = 144;
    int replicates = 0;    // 0 = skip the confidence bootstrap
    Duration window{7 * 24 * 3600};
    Duration resample_interval{600};
    std::uint64_t seed = 0;

    // synth-trace parameters
    std::string pattern = "steady";
    std::string dimension = "cpu";
    std::string object_id = "synth-1";
    int samples = 1008;
    double level = 1.0;
    double noise = 0.0;
    double spike_height = 10.0;
    double spike_rate = 0.01;
    double amplitude = 1.0;
    int period = 144;
    std::string start = "2024-01-01T00:00:00Z";
};

/// "10m", "24h", "7d", "90s" or a bare number of seconds.
std::optional<Duration> parse_duration(const std::string& text);

int cmd_assess(const RunConfig& config);
int cmd_train_profiles(const RunConfig& config);
int cmd_backtest(const RunConfig& config);
int cmd_curve(const RunConfig& config);
int cmd_synth_trace(const RunConfig& config);

}  // namespace rightsize::cli
