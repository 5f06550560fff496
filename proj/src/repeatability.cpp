// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include "hpcai500/repeatability.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "hpcai500/numfmt.hpp"

namespace hpcai500 {

VariationReport variation(std::span<const double> epochs_samples, std::string workload_id) {
    if (epochs_samples.size() < 2)
        throw std::invalid_argument("variation needs at least 2 samples, got " +
                                    std::to_string(epochs_samples.size()));
    for (double s : epochs_samples)
        if (!(s > 0.0) || !std::isfinite(s))
            throw std::invalid_argument("epochs samples must be finite and > 0, got " + format_shortest(s));

    const auto n = static_cast<double>(epochs_samples.size());
    double sum = 0.0;
    for (double s : epochs_samples) sum += s;
    const double mean = sum / n;
    double ss = 0.0;
    for (double s : epochs_samples) ss += (s - mean) * (s - mean);
    const double stddev = std::sqrt(ss / (n - 1.0));

    VariationReport r;
    r.workload_id = std::move(workload_id);
    r.runs = static_cast<int>(epochs_samples.size());
    r.mean_epochs = mean;
    r.stddev_epochs = stddev;
    r.variation = stddev / mean;
    return r;
}

std::string_view to_string(Repeatability r) {
    return r == Repeatability::repeatable ? "repeatable" : "unrepeatable";
}

Repeatability classify_repeatability(const VariationReport& report, double threshold) {
    return report.variation <= threshold ? Repeatability::repeatable : Repeatability::unrepeatable;
}

GroupBy GroupBy::parse(std::string_view text) {
    GroupBy by{false, false, false};
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto name = text.substr(0, comma);
        if (name == "benchmark") by.benchmark = true;
        else if (name == "system") by.system = true;
        else if (name == "config") by.config = true;
        else if (!name.empty())
            throw std::invalid_argument("unknown group-by key '" + std::string(name) +
                                        "' (expected benchmark, system, config)");
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return by;
}

std::string config_key(const RunRecord& run) {
    std::string key = "p=" + std::to_string(run.accelerator_count) +
                      ";precision=" + std::string(to_string(run.precision_mode)) +
                      ";compression=" + (run.comm_compression ? "1" : "0");
    if (run.seed) key += ";seed=" + std::to_string(*run.seed);
    return key;
}

std::vector<RunGroup> group_runs(std::span<const RunRecord> runs, const GroupBy& by) {
    using Key = std::tuple<std::string, std::string, std::string>;
    std::map<Key, RunGroup> groups;
    for (const auto& run : runs) {
        Key key{by.benchmark ? run.benchmark_id : "", by.system ? run.system_name : "",
                by.config ? config_key(run) : ""};
        auto& g = groups[key];
        std::tie(g.benchmark_id, g.system_name, g.config_key) = key;
        g.epochs.push_back(static_cast<double>(run.epochs_run));
        g.run_ids.push_back(run.run_id);
    }
    std::vector<RunGroup> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) out.push_back(std::move(g));
    return out;
}

}  // namespace hpcai500
