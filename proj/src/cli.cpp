// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include "hpcai500/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "hpcai500/characterization.hpp"
#include "hpcai500/core.hpp"
#include "hpcai500/ingest.hpp"
#include "hpcai500/numfmt.hpp"
#include "hpcai500/repeatability.hpp"
#include "hpcai500/report.hpp"
#include "hpcai500/scaling.hpp"
#include "hpcai500/scoring.hpp"
#include "json.hpp"

namespace hpcai500::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw InputError("error reading " + path);
    return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path.string());
    out << content;
    if (!out) throw InputError("error writing " + path.string());
}

std::vector<RunRecord> load_runs(const std::string& path) {
    std::istringstream in(read_file(path));
    return parse_runs(in, path).records;
}

// Options shared by every subcommand after flag/config/env resolution.
struct Context {
    Registry registry = Registry::builtin();
    Config config;
    std::ostream* out = nullptr;
    std::ostream* err = nullptr;
};

fs::path resolve_output_dir(const Context& ctx, const std::string& flag) {
    if (!flag.empty()) return flag;
    if (ctx.config.output_dir) return *ctx.config.output_dir;
    if (const char* env = std::getenv(std::string(kOutputDirEnv).c_str()); env && *env) return env;
    return ".";
}

ordered_json score_json(const ScoreReport& s) {
    ordered_json obj;
    obj["run_id"] = s.run_id;
    obj["benchmark_id"] = s.benchmark_id;
    obj["penalty_coefficient"] = s.penalty_coefficient;
    obj["vflops"] = s.vflops;
    if (s.time_to_quality_seconds) obj["time_to_quality_seconds"] = *s.time_to_quality_seconds;
    else obj["time_to_quality_seconds"] = nullptr;
    obj["above_target"] = s.above_target();
    obj["valid"] = s.valid;
    obj["violations"] = s.violations;
    return obj;
}

// --- validate --------------------------------------------------------------

int cmd_validate(const Context& ctx, const std::string& runs_path) {
    const auto runs = load_runs(runs_path);
    bool all_valid = true;
    for (const auto& run : runs) {
        const auto* spec = ctx.registry.find(run.benchmark_id);
        if (!spec) {
            *ctx.out << run.run_id << ": unknown benchmark id '" << run.benchmark_id << "'\n";
            all_valid = false;
            continue;
        }
        for (const auto& v : validate_run(run, *spec)) {
            *ctx.out << run.run_id << ": " << v << '\n';
            all_valid = false;
        }
    }
    return all_valid ? kOk : kDomainViolation;
}

// --- score -----------------------------------------------------------------

int cmd_score(const Context& ctx, const std::string& runs_path) {
    const auto runs = load_runs(runs_path);
    auto doc = ordered_json::array();
    for (const auto& run : runs) doc.push_back(score_json(score_run(run, ctx.registry)));
    *ctx.out << doc.dump(2) << '\n';
    return kOk;
}

// --- rank ------------------------------------------------------------------

int cmd_rank(const Context& ctx, const std::string& runs_path, const std::string& format_name,
             bool include_invalid, const std::string& output) {
    const auto format = parse_output_format(format_name);
    if (!format) throw InputError("unknown format '" + format_name + "' (expected json, csv, markdown)");
    const auto runs = load_runs(runs_path);
    std::vector<ScoredRun> scored;
    for (const auto& run : runs) scored.push_back({run, score_run(run, ctx.registry)});
    const auto entries = rank(scored, {include_invalid});
    const auto text = emit(entries, *format);
    if (output.empty() || output == "-") *ctx.out << text;
    else write_file(output, text);
    return kOk;
}

// --- variation -------------------------------------------------------------

int cmd_variation(const Context& ctx, const std::string& runs_path, const std::string& group_by) {
    GroupBy by;
    try {
        by = GroupBy::parse(group_by);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    const auto runs = load_runs(runs_path);
    auto doc = ordered_json::array();
    for (const auto& g : group_runs(runs, by)) {
        std::string label = g.benchmark_id;
        for (const auto* part : {&g.system_name, &g.config_key})
            if (!part->empty()) label += (label.empty() ? "" : "/") + *part;
        if (g.epochs.size() < 2) {
            *ctx.err << "warning: skipping group " << (label.empty() ? "<all>" : label) << ": "
                     << "only run " << g.run_ids.front() << " (need at least 2)\n";
            continue;
        }
        const auto report = variation(g.epochs, g.benchmark_id);
        ordered_json obj;
        obj["benchmark_id"] = g.benchmark_id;
        obj["system_name"] = g.system_name;
        obj["config"] = g.config_key;
        obj["runs"] = report.runs;
        obj["run_ids"] = g.run_ids;
        obj["mean_epochs"] = report.mean_epochs;
        obj["stddev_epochs"] = report.stddev_epochs;
        obj["variation"] = report.variation;
        obj["variation_percent"] = format_significant(report.variation * 100.0, 4) + "%";
        obj["threshold"] = ctx.config.threshold;
        obj["classification"] = to_string(classify_repeatability(report, ctx.config.threshold));
        doc.push_back(std::move(obj));
    }
    *ctx.out << doc.dump(2) << '\n';
    return kOk;
}

// --- cluster ---------------------------------------------------------------

int cmd_cluster(const Context& ctx, const std::string& profiles_path, const std::string& mode_name,
                int iterations, const std::string& output_dir) {
    const auto mode = parse_feature_mode(mode_name);
    if (!mode) throw InputError("unknown mode '" + mode_name + "' (expected arch_dependent, arch_independent)");
    std::istringstream in(read_file(profiles_path));
    const auto dump = parse_profiles(in, profiles_path);

    CharacterizeOptions opts;
    opts.mode = *mode;
    opts.k = ctx.config.k;
    opts.seed = ctx.config.seed;
    opts.perplexity = ctx.config.perplexity;
    opts.tsne_iterations = iterations;
    const auto result = characterize(dump.vectors, opts);
    for (const auto& w : result.warnings) *ctx.err << "warning: " << w << '\n';

    const auto dir = resolve_output_dir(ctx, output_dir);
    write_file(dir / "embedding.csv", write_embedding_csv(result));
    write_file(dir / "clusters.json", write_clusters_json(result));
    *ctx.err << "wrote " << (dir / "embedding.csv").string() << " and " << (dir / "clusters.json").string()
             << '\n';
    return kOk;
}

// --- scaling ---------------------------------------------------------------

struct ScalingFilters {
    std::string benchmark;
    std::string system;
    std::string precision;
    std::string compression;  // "", "on", "off"
};

struct NamedModel {
    std::string name;
    CommModel model;
    std::vector<std::int64_t> scales;
};

std::vector<NamedModel> load_models(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    const bool multi = doc.is_object() && doc.contains("models");
    if (multi && doc.size() != 1) throw InputError(path + ": only \"models\" allowed next to a model list");
    const json list = multi ? doc.at("models") : json::array({doc});
    if (!list.is_array()) throw InputError(path + ": \"models\" must be an array");

    static const std::vector<std::string> kKeys = {
        "name", "model_bytes", "per_device_compute_seconds", "intra_node_bandwidth", "inter_node_bandwidth",
        "devices_per_node", "compression", "topology", "scales"};
    std::vector<NamedModel> models;
    for (const auto& obj : list) {
        if (!obj.is_object()) throw InputError(path + ": model must be an object");
        for (const auto& [key, value] : obj.items())
            if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
                throw InputError(path + ": unknown model field " + key);
        try {
            NamedModel m;
            m.name = obj.value("name", "");
            if (multi && m.name.empty()) throw InputError(path + ": every model in a list needs a name");
            m.model.model_bytes = obj.at("model_bytes").get<double>();
            m.model.per_device_compute_seconds = obj.at("per_device_compute_seconds").get<double>();
            m.model.intra_node_bandwidth = obj.at("intra_node_bandwidth").get<double>();
            m.model.inter_node_bandwidth = obj.at("inter_node_bandwidth").get<double>();
            m.model.devices_per_node = obj.at("devices_per_node").get<std::int64_t>();
            m.model.compression = obj.value("compression", false);
            const auto topo = obj.value("topology", std::string("ring"));
            const auto parsed = parse_topology(topo);
            if (!parsed) throw InputError(path + ": unknown topology " + topo);
            m.model.topology = *parsed;
            m.scales = obj.value("scales", std::vector<std::int64_t>{1, 8, 16, 32, 64});
            check_model(m.model);
            for (auto p : m.scales)
                if (p < 1) throw InputError(path + ": scales must be >= 1");
            models.push_back(std::move(m));
        } catch (const json::exception& e) {
            throw InputError(path + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw InputError(path + ": " + e.what());
        }
    }
    return models;
}

int cmd_scaling(const Context& ctx, const std::string& runs_path, std::int64_t baseline, const ScalingFilters& f,
                const std::string& model_path, const std::string& output_dir) {
    if (runs_path.empty() && model_path.empty()) throw InputError("scaling: give --runs and/or --model");
    const auto dir = resolve_output_dir(ctx, output_dir);

    if (!runs_path.empty()) {
        std::optional<PrecisionMode> precision;
        if (!f.precision.empty()) {
            precision = parse_precision_mode(f.precision);
            if (!precision) throw InputError("unknown precision '" + f.precision + "'");
        }
        if (!f.compression.empty() && f.compression != "on" && f.compression != "off")
            throw InputError("--compression must be on or off");
        std::vector<RunRecord> selected;
        for (auto& run : load_runs(runs_path)) {
            if (!f.benchmark.empty() && run.benchmark_id != f.benchmark) continue;
            if (!f.system.empty() && run.system_name != f.system) continue;
            if (precision && run.precision_mode != *precision) continue;
            if (!f.compression.empty() && run.comm_compression != (f.compression == "on")) continue;
            selected.push_back(std::move(run));
        }
        const auto curve = scaling_curve(selected, baseline);
        for (const auto& w : curve.warnings) *ctx.err << "warning: " << w << '\n';
        write_file(dir / "scaling.csv", write_scaling_csv(curve));
        *ctx.err << "wrote " << (dir / "scaling.csv").string() << '\n';
    }

    if (!model_path.empty()) {
        for (const auto& m : load_models(model_path)) {
            std::vector<Prediction> predictions;
            for (auto p : m.scales) predictions.push_back(predict(m.model, p));
            const auto name = m.name.empty() ? std::string("prediction.csv") : "prediction-" + m.name + ".csv";
            write_file(dir / name, write_prediction_csv(predictions));
            *ctx.err << "wrote " << (dir / name).string() << '\n';
        }
    }
    return kOk;
}

std::string version_text() {
    return "hpcai500 " + std::string(kToolVersion) + " (runs format " + std::to_string(kRunsFormatVersion) +
           ", profiles format " + std::to_string(kProfilesFormatVersion) + ")";
}

}  // namespace

Config load_config(const fs::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path.string()));
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw InputError(path.string() + ": config must be a JSON object");
    Config c;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "registry") {
                fs::path p = value.get<std::string>();
                c.registry_path = p.is_relative() ? path.parent_path() / p : p;
            } else if (key == "seed") {
                c.seed = value.get<std::uint64_t>();
            } else if (key == "threshold") {
                c.threshold = value.get<double>();
            } else if (key == "k") {
                c.k = value.get<int>();
            } else if (key == "perplexity") {
                c.perplexity = value.get<double>();
            } else if (key == "output_dir") {
                c.output_dir = value.get<std::string>();
            } else {
                throw InputError(path.string() + ": unknown config key " + key);
            }
        }
    } catch (const json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
    if (!(c.threshold >= 0.0)) throw InputError(path.string() + ": threshold must be >= 0");
    if (c.k < 1) throw InputError(path.string() + ": k must be >= 1");
    if (!(c.perplexity >= 1.0)) throw InputError(path.string() + ": perplexity must be >= 1");
    return c;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"HPC AI500 benchmark scoring, ranking and workload analysis", "hpcai500"};
    app.set_version_flag("--version", version_text());
    app.require_subcommand(1);

    std::string config_path;
    std::string registry_path;
    app.add_option("--config", config_path, "JSON config file (registry, seed, threshold, k, perplexity, output_dir)");
    app.add_option("--registry", registry_path, "JSON array of extra/replacement benchmark specs");

    std::string runs_path;
    std::string format = "markdown";
    bool include_invalid = false;
    std::string output;
    std::string group_by = "benchmark,system,config";
    double threshold = 0.0;
    std::string mode = "arch_dependent";
    int k = 0;
    double perplexity = 0.0;
    std::uint64_t seed = 0;
    int iterations = 1000;
    std::string output_dir;
    std::int64_t baseline = 8;
    ScalingFilters filters;
    std::string model_path;

    auto* validate = app.add_subcommand("validate", "Check runs against their benchmark rules; exit 1 if any fail");
    validate->add_option("runs", runs_path, "run-record file ('-' for stdin)")->required();

    auto* score = app.add_subcommand("score", "Print penalty, VFLOPS and time-to-quality per run as JSON");
    score->add_option("runs", runs_path, "run-record file ('-' for stdin)")->required();

    auto* rank_cmd = app.add_subcommand("rank", "Rank systems by VFLOPS");
    rank_cmd->add_option("runs", runs_path, "run-record file ('-' for stdin)")->required();
    rank_cmd->add_option("--format", format, "json, csv or markdown")->capture_default_str();
    rank_cmd->add_flag("--include-invalid", include_invalid, "keep runs that fail validation (flagged)");
    rank_cmd->add_option("--output,-o", output, "write to this file instead of stdout");

    auto* variation_cmd = app.add_subcommand(
        "variation",
        "Run-to-run variation of epochs-to-quality.\n"
        "Groups runs by any of: benchmark (benchmark_id), system (system_name),\n"
        "config (accelerator_count, precision_mode, comm_compression, and seed when present).\n"
        "Groups with a single run are skipped with a warning.");
    variation_cmd->add_option("runs", runs_path, "run-record file ('-' for stdin)")->required();
    variation_cmd->add_option("--group-by", group_by, "comma-separated grouping keys")->capture_default_str();
    auto* threshold_opt = variation_cmd->add_option("--threshold", threshold,
                                                    "repeatable iff variation <= threshold (fraction, default 0.02)");

    auto* cluster = app.add_subcommand("cluster", "k-means + t-SNE over profiler metric dumps");
    cluster->add_option("profiles", runs_path, "profile CSV ('-' for stdin)")->required();
    cluster->add_option("--mode", mode, "arch_dependent or arch_independent")->capture_default_str();
    auto* k_opt = cluster->add_option("--k", k, "number of clusters (default 3)");
    auto* perplexity_opt = cluster->add_option("--perplexity", perplexity, "t-SNE perplexity (default 4)");
    auto* cluster_seed_opt = cluster->add_option("--seed", seed, "random seed (default 42)");
    cluster->add_option("--iterations", iterations, "t-SNE iterations")->capture_default_str()->check(
        CLI::NonNegativeNumber);
    cluster->add_option("--output-dir", output_dir, "directory for embedding.csv and clusters.json");

    auto* scaling = app.add_subcommand("scaling", "Measured scaling curves and all-reduce efficiency predictions");
    scaling->add_option("--runs", runs_path, "run-record file -> scaling.csv");
    scaling->add_option("--baseline", baseline, "baseline accelerator count")->capture_default_str();
    scaling->add_option("--benchmark", filters.benchmark, "only runs of this benchmark");
    scaling->add_option("--system", filters.system, "only runs of this system");
    scaling->add_option("--precision", filters.precision, "only fp32 or mixed runs");
    scaling->add_option("--compression", filters.compression, "only runs with compression on/off");
    scaling->add_option("--model", model_path, "comm model JSON -> prediction.csv");
    scaling->add_option("--output-dir", output_dir, "directory for the CSV files");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    Context ctx;
    ctx.out = &out;
    ctx.err = &err;
    try {
        if (!config_path.empty()) ctx.config = load_config(config_path);
        if (!registry_path.empty()) ctx.config.registry_path = registry_path;
        if (threshold_opt->count() > 0) ctx.config.threshold = threshold;
        if (k_opt->count() > 0) ctx.config.k = k;
        if (perplexity_opt->count() > 0) ctx.config.perplexity = perplexity;
        if (cluster_seed_opt->count() > 0) ctx.config.seed = seed;
        if (!(ctx.config.threshold >= 0.0)) throw InputError("--threshold must be >= 0");
        if (ctx.config.registry_path) {
            std::vector<BenchmarkSpec> specs;
            try {
                specs = parse_benchmark_specs(read_file(ctx.config.registry_path->string()));
            } catch (const std::invalid_argument& e) {
                throw InputError(ctx.config.registry_path->string() + ": " + e.what());
            }
            ctx.registry = Registry::builtin().with_overrides(specs);
        }

        if (*validate) return cmd_validate(ctx, runs_path);
        if (*score) return cmd_score(ctx, runs_path);
        if (*rank_cmd) return cmd_rank(ctx, runs_path, format, include_invalid, output);
        if (*variation_cmd) return cmd_variation(ctx, runs_path, group_by);
        if (*cluster) return cmd_cluster(ctx, runs_path, mode, iterations, output_dir);
        if (*scaling) return cmd_scaling(ctx, runs_path, baseline, filters, model_path, output_dir);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kDomainViolation;
    }
    return kInputError;
}

}  // namespace hpcai500::cli
