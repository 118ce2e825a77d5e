#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <vector>

#include <json.hpp>

#include "rightsize/catalog.hpp"
#include "rightsize/curve.hpp"
#include "rightsize/error.hpp"
#include "rightsize/pipeline.hpp"
#include "rightsize/profiler.hpp"
#include "rightsize/recommend.hpp"
#include "rightsize/synth.hpp"

namespace rightsize::cli {

namespace {

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::no_feasible_sku:
        case Errc::no_candidate_sku:
            return kExitNoFeasible;
        default:
            return kExitInputError;
    }
}

FileLayout load_file_layout(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::invalid_argument, "cannot open file layout " + path.string());
    auto doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("file_sizes_gib") ||
        !doc["file_sizes_gib"].is_array())
        raise(Errc::invalid_argument,
              path.string() + ": expected {\"file_sizes_gib\": [..]}");
    FileLayout layout;
    for (const auto& v : doc["file_sizes_gib"]) {
        if (!v.is_number() || v.get<double>() <= 0.0)
            raise(Errc::invalid_argument, path.string() + ": file sizes must be positive");
        layout.file_sizes_gib.push_back(v.get<double>());
    }
    if (layout.file_sizes_gib.empty())
        raise(Errc::invalid_argument, path.string() + ": layout names no files");
    return layout;
}

std::vector<std::pair<std::string, std::string>> load_labels(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::invalid_argument, "cannot open labels " + path.string());
    std::vector<std::pair<std::string, std::string>> labels;
    std::string line;
    if (!std::getline(in, line))
        raise(Errc::invalid_argument, path.string() + ": empty labels file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "object_id,chosen_sku_id")
        raise(Errc::invalid_argument, path.string() + ": expected header object_id,chosen_sku_id");
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos || comma == 0 || comma + 1 >= line.size())
            raise(Errc::invalid_argument, path.string() + ": bad label row '" + line + "'");
        labels.emplace_back(line.substr(0, comma), line.substr(comma + 1));
    }
    if (labels.empty()) raise(Errc::invalid_argument, path.string() + ": no label rows");
    return labels;
}

/// One instance-level trace set per customer CSV in the dataset directory.
std::map<std::string, PerfTraceSet> load_dataset(const std::filesystem::path& dir,
                                                 Duration interval) {
    if (!std::filesystem::is_directory(dir))
        raise(Errc::invalid_argument, dir.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            files.push_back(entry.path());
    if (files.empty()) raise(Errc::invalid_argument, dir.string() + " holds no .csv files");
    std::sort(files.begin(), files.end());

    std::map<std::string, PerfTraceSet> dataset;
    for (const auto& file : files) {
        // Multi-object customer files reduce under the file's stem so the
        // labels CSV has a stable name to join on.
        PerfTraceSet set = reduce_to_instance(parse_traces(file), interval, file.stem().string());
        std::string object_id = set.object_id;
        if (!dataset.emplace(object_id, std::move(set)).second)
            raise(Errc::invalid_argument,
                  "object '" + object_id + "' appears in more than one dataset file");
    }
    return dataset;
}

std::vector<TrainingExample> pair_with_labels(std::map<std::string, PerfTraceSet>& dataset,
                                              const std::vector<std::pair<std::string, std::string>>& labels) {
    std::vector<TrainingExample> examples;
    examples.reserve(labels.size());
    for (const auto& [object_id, sku_id] : labels) {
        auto it = dataset.find(object_id);
        if (it == dataset.end())
            raise(Errc::invalid_argument, "label names object '" + object_id +
                                              "' with no trace file in the dataset");
        examples.push_back({it->second, sku_id});
    }
    return examples;
}

ProfileOptions profile_options_from(const RunConfig& config) {
    auto strategy = profile_strategy_from_string(config.method);
    if (!strategy)
        raise(Errc::invalid_argument, "unknown profiling method '" + config.method + "'");
    ProfileOptions options;
    options.strategy = *strategy;
    options.rho = config.rho;
    options.stl_period = config.stl_period;
    if (config.cutoff >= 0.0)
        for (Dimension d : all_dimensions) options.cutoffs[d] = config.cutoff;
    return options;
}

struct AssessInputs {
    SkuCatalog catalog;
    PerfTraceSet raw;
    CandidateSet candidates;
    Deployment deployment;
};

AssessInputs load_assess_inputs(const RunConfig& config) {
    AssessInputs inputs;
    auto deployment = deployment_from_string(config.target);
    if (!deployment) raise(Errc::invalid_argument, "target must be db or mi");
    inputs.deployment = *deployment;

    inputs.catalog = load_catalog(config.catalog);
    inputs.raw = reduce_to_instance(parse_traces(config.traces), config.resample_interval);

    std::optional<FileLayout> layout;
    if (inputs.deployment == Deployment::Mi) {
        if (config.file_layout.empty())
            raise(Errc::invalid_argument, "MI target requires --file-layout");
        layout = load_file_layout(config.file_layout);
    }
    inputs.candidates = assemble_candidates(inputs.catalog, inputs.deployment, layout,
                                            inputs.raw, config.quantile);
    return inputs;
}

}  // namespace

std::optional<Duration> parse_duration(const std::string& text) {
    if (text.empty()) return std::nullopt;
    long multiplier = 1;
    std::string digits = text;
    switch (text.back()) {
        case 'd': multiplier = 86400; digits.pop_back(); break;
        case 'h': multiplier = 3600; digits.pop_back(); break;
        case 'm': multiplier = 60; digits.pop_back(); break;
        case 's': multiplier = 1; digits.pop_back(); break;
        default: break;
    }
    long value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || value <= 0)
        return std::nullopt;
    return Duration{value * multiplier};
}

int cmd_assess(const RunConfig& config) {
    try {
        AssessInputs inputs = load_assess_inputs(config);
        auto strategy = selection_strategy_from_string(config.strategy);
        if (!strategy) raise(Errc::invalid_argument, "unknown strategy '" + config.strategy + "'");

        GroupModel model;
        SelectionContext context;
        context.candidates = inputs.candidates.candidates;
        context.strategy = *strategy;
        context.quantile = config.quantile;
        context.epsilon = config.epsilon;
        context.gamma = config.gamma;
        context.price_factor = config.price_factor;
        context.escalated_to_bc = inputs.candidates.escalated_to_bc;
        if (*strategy == SelectionStrategy::Doppler) {
            if (config.profiles.empty())
                raise(Errc::invalid_argument, "doppler strategy requires --profiles");
            model = load_group_model(config.profiles);
            if (model.deployment != inputs.deployment)
                raise(Errc::invalid_argument, "group model was trained for target '" +
                                                  std::string(to_string(model.deployment)) + "'");
            context.model = &model;
        }

        PerfTraceSet inverted = with_inverted_latency(inputs.raw);
        PricePerfCurve curve = build_curve(inverted, context.candidates);
        Recommendation rec = select_on_curve(curve, inverted, context);
        rec.escalated_to_bc = context.escalated_to_bc;
        rec.overprovisioned_input = detect_overprovision(curve, rec.sku_id, config.price_factor);
        if (config.replicates > 0)
            rec.confidence =
                confidence_score(inputs.raw, context, config.replicates, config.window, config.seed);

        save_recommendation(rec, curve, config.out);
        if (!config.curve_csv.empty()) write_curve_csv(curve, config.curve_csv);

        std::cout << "recommended " << rec.sku_id << " (strategy " << to_string(rec.strategy)
                  << ", throttling " << rec.achieved_throttling;
        if (rec.confidence) std::cout << ", confidence " << *rec.confidence;
        std::cout << ")\n";
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "assess: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "assess: " << e.what() << '\n';
        return kExitInputError;
    }
}

int cmd_curve(const RunConfig& config) {
    try {
        AssessInputs inputs = load_assess_inputs(config);
        PerfTraceSet inverted = with_inverted_latency(inputs.raw);
        PricePerfCurve curve = build_curve(inverted, inputs.candidates.candidates);
        write_curve_csv(curve, config.out);
        std::cout << "curve with " << curve.points.size() << " kept / " << curve.pruned.size()
                  << " pruned points (" << to_string(classify_shape(curve)) << ")\n";
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "curve: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "curve: " << e.what() << '\n';
        return kExitInputError;
    }
}

int cmd_train_profiles(const RunConfig& config) {
    try {
        SkuCatalog catalog = load_catalog(config.catalog);
        auto labels = load_labels(config.labels);
        auto dataset = load_dataset(config.dataset_dir, config.resample_interval);
        auto examples = pair_with_labels(dataset, labels);

        TrainOptions options;
        options.profile = profile_options_from(config);
        options.price_factor = config.price_factor;
        options.quantile = config.quantile;
        GroupModel model = train_groups(examples, catalog, options);
        save_group_model(model, config.out);

        std::printf("%-8s %-12s %8s %10s %10s\n", "group", "bits", "count", "mean", "std");
        for (const auto& [id, stats] : model.groups) {
            std::string bits;
            for (int b : stats.bits) bits += b ? '1' : '0';
            std::printf("%-8d %-12s %8d %10.4f %10.4f\n", id, bits.c_str(), stats.member_count,
                        stats.mean_throttling, stats.std_dev);
        }
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "train-profiles: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "train-profiles: " << e.what() << '\n';
        return kExitInputError;
    }
}

int cmd_backtest(const RunConfig& config) {
    try {
        SkuCatalog catalog = load_catalog(config.catalog);
        GroupModel model = load_group_model(config.profiles);
        auto labels = load_labels(config.labels);
        auto dataset = load_dataset(config.dataset_dir, config.resample_interval);
        auto examples = pair_with_labels(dataset, labels);
        auto strategy = selection_strategy_from_string(config.strategy);
        if (!strategy) raise(Errc::invalid_argument, "unknown strategy '" + config.strategy + "'");

        BacktestOptions options;
        options.quantile = config.quantile;
        options.epsilon = config.epsilon;
        options.gamma = config.gamma;
        options.price_factor = config.price_factor;
        BacktestReport report = backtest(examples, catalog, model, *strategy, options);
        save_backtest_report(report, config.out);

        std::printf("%-18s %10s %10s %10s %10s\n", "strategy", "accuracy", "matched", "excluded",
                    "total");
        std::printf("%-18s %9.1f%% %10d %10d %10d\n", config.strategy.c_str(),
                    100.0 * report.accuracy, report.exact_match, report.excluded_overprovisioned,
                    report.total);
        for (const auto& [tier, accuracy] : report.per_tier_accuracy)
            std::printf("  tier %-12s %9.1f%%\n", tier.c_str(), 100.0 * accuracy);
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "backtest: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "backtest: " << e.what() << '\n';
        return kExitInputError;
    }
}

int cmd_synth_trace(const RunConfig& config) {
    try {
        auto pattern = trace_pattern_from_string(config.pattern);
        if (!pattern) raise(Errc::invalid_argument, "unknown pattern '" + config.pattern + "'");
        auto dimension = dimension_from_string(config.dimension);
        if (!dimension) raise(Errc::unknown_dimension, config.dimension);
        auto start = parse_timestamp(config.start);
        if (!start) raise(Errc::invalid_argument, "bad --start timestamp");

        SynthSpec spec;
        spec.pattern = *pattern;
        spec.samples = config.samples;
        spec.seed = config.seed;
        spec.level = config.level;
        spec.noise = config.noise;
        spec.spike_height = config.spike_height;
        spec.spike_rate = config.spike_rate;
        spec.amplitude = config.amplitude;
        spec.period = config.period;
        spec.interval = config.resample_interval;
        spec.start = *start;

        PerfTraceSet set =
            synth_trace_set(config.object_id, Level::Instance, *dimension, spec);
        write_trace_csv(set, config.out);
        std::cout << "wrote " << config.samples << ' ' << config.pattern << " samples to "
                  << config.out.string() << '\n';
        return kExitOk;
    } catch (const Error& e) {
        std::cerr << "synth-trace: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "synth-trace: " << e.what() << '\n';
        return kExitInputError;
    }
}

}  // namespace rightsize::cli
