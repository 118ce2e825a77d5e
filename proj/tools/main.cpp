#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using rightsize::cli::RunConfig;

void add_duration_option(CLI::App* app, const char* name, rightsize::Duration& target,
                         const char* description) {
    app->add_option_function<std::string>(
           name,
           [&target, name](const std::string& text) {
               auto parsed = rightsize::cli::parse_duration(text);
               if (!parsed)
                   throw CLI::ValidationError(std::string(name) +
                                              ": expected e.g. 10m, 24h, 7d or seconds");
               target = *parsed;
           },
           description)
        ->type_name("DURATION");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Right-sizing recommendation engine: maps resource-usage history to the most "
                 "cost-efficient cloud SKU"};
    app.require_subcommand(1);

    RunConfig config;
    int (*run)(const RunConfig&) = nullptr;

    auto* assess = app.add_subcommand("assess", "Recommend a SKU for one workload");
    assess->add_option("--traces", config.traces, "Trace CSV")->required();
    assess->add_option("--catalog", config.catalog, "SKU catalog JSON")->required();
    assess->add_option("--profiles", config.profiles, "Group model JSON (required for doppler)");
    assess->add_option("--target", config.target, "Deployment target: db|mi")->required();
    assess->add_option("--file-layout", config.file_layout, "Data file layout JSON (MI only)");
    assess->add_option("--strategy", config.strategy,
                       "doppler|baseline|largest-increase|largest-slope|perf-threshold");
    assess->add_option("--confidence-bootstraps", config.replicates,
                       "Bootstrap replicates for the confidence score (0 = skip)");
    add_duration_option(assess, "--window", config.window, "Bootstrap window (default 7d)");
    assess->add_option("--seed", config.seed, "Bootstrap seed");
    assess->add_option("--epsilon", config.epsilon, "largest-increase cutoff (default 0.001)");
    assess->add_option("--gamma", config.gamma, "perf-threshold score floor (default 0.95)");
    assess->add_option("--quantile", config.quantile, "Baseline/MI summary quantile (default 0.95)");
    assess->add_option("--price-factor", config.price_factor,
                       "Over-provision price ratio (default 2.0)");
    add_duration_option(assess, "--resample", config.resample_interval,
                        "Resampling interval (default 10m)");
    assess->add_option("--out", config.out, "Assessment report JSON")->required();
    assess->add_option("--curve-csv", config.curve_csv, "Optional curve CSV export");
    assess->callback([&] { run = rightsize::cli::cmd_assess; });

    auto* train = app.add_subcommand("train-profiles", "Learn per-group throttling tolerances");
    train->add_option("--dataset", config.dataset_dir, "Directory of per-customer trace CSVs")
        ->required();
    train->add_option("--labels", config.labels, "CSV object_id,chosen_sku_id")->required();
    train->add_option("--catalog", config.catalog, "SKU catalog JSON")->required();
    train->add_option("--method", config.method,
                      "threshold|minmax-auc|max-auc|outlier|stl|combined");
    train->add_option("--rho", config.rho, "Spike-duration threshold (default 0.05)");
    train->add_option("--cutoff", config.cutoff, "Binarization cutoff override");
    train->add_option("--stl-period", config.stl_period, "STL season length (default 144)");
    train->add_option("--quantile", config.quantile, "MI summary quantile (default 0.95)");
    train->add_option("--price-factor", config.price_factor,
                      "Over-provision exclusion ratio (default 2.0)");
    add_duration_option(train, "--resample", config.resample_interval,
                        "Resampling interval (default 10m)");
    train->add_option("--out", config.out, "Group model JSON")->required();
    train->callback([&] { run = rightsize::cli::cmd_train_profiles; });

    auto* bt = app.add_subcommand("backtest", "Replay labeled customers against a strategy");
    bt->add_option("--dataset", config.dataset_dir, "Directory of per-customer trace CSVs")
        ->required();
    bt->add_option("--labels", config.labels, "CSV object_id,chosen_sku_id")->required();
    bt->add_option("--catalog", config.catalog, "SKU catalog JSON")->required();
    bt->add_option("--profiles", config.profiles, "Group model JSON")->required();
    bt->add_option("--strategy", config.strategy,
                   "doppler|baseline|largest-increase|largest-slope|perf-threshold");
    bt->add_option("--epsilon", config.epsilon, "largest-increase cutoff (default 0.001)");
    bt->add_option("--gamma", config.gamma, "perf-threshold score floor (default 0.95)");
    bt->add_option("--quantile", config.quantile, "Baseline/MI summary quantile (default 0.95)");
    bt->add_option("--price-factor", config.price_factor,
                   "Over-provision exclusion ratio (default 2.0)");
    add_duration_option(bt, "--resample", config.resample_interval,
                        "Resampling interval (default 10m)");
    bt->add_option("--out", config.out, "Backtest report JSON")->required();
    bt->callback([&] { run = rightsize::cli::cmd_backtest; });

    auto* curve = app.add_subcommand("curve", "Export the price-performance curve");
    curve->add_option("--traces", config.traces, "Trace CSV")->required();
    curve->add_option("--catalog", config.catalog, "SKU catalog JSON")->required();
    curve->add_option("--target", config.target, "Deployment target: db|mi")->required();
    curve->add_option("--file-layout", config.file_layout, "Data file layout JSON (MI only)");
    curve->add_option("--quantile", config.quantile, "MI summary quantile (default 0.95)");
    add_duration_option(curve, "--resample", config.resample_interval,
                        "Resampling interval (default 10m)");
    curve->add_option("--out", config.out, "Curve CSV")->required();
    curve->callback([&] { run = rightsize::cli::cmd_curve; });

    auto* synth = app.add_subcommand("synth-trace", "Generate a synthetic trace CSV");
    synth->add_option("--pattern", config.pattern, "steady|spiky|seasonal|ramp")->required();
    synth->add_option("--samples", config.samples, "Sample count (default 1008 = 7d at 10m)");
    synth->add_option("--seed", config.seed, "RNG seed");
    synth->add_option("--level", config.level, "Baseline value (default 1.0)");
    synth->add_option("--noise", config.noise, "Gaussian noise stddev (default 0)");
    synth->add_option("--spike-height", config.spike_height, "Added on spike samples");
    synth->add_option("--spike-rate", config.spike_rate, "Per-sample spike probability");
    synth->add_option("--amplitude", config.amplitude, "Seasonal swing / ramp rise");
    synth->add_option("--period", config.period, "Season length in samples (default 144)");
    synth->add_option("--dimension", config.dimension, "Trace dimension (default cpu)");
    synth->add_option("--object-id", config.object_id, "Object id (default synth-1)");
    synth->add_option("--start", config.start, "First timestamp (ISO-8601 UTC)");
    add_duration_option(synth, "--interval", config.resample_interval,
                        "Sample spacing (default 10m)");
    synth->add_option("--out", config.out, "Trace CSV")->required();
    synth->callback([&] { run = rightsize::cli::cmd_synth_trace; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return rightsize::cli::kExitInputError;
    }

    return run ? run(config) : rightsize::cli::kExitInputError;
}
