// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// Run-to-run variation: coefficient of variation of epochs-to-quality over
// repeated runs of the same configuration.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpcai500/core.hpp"

namespace hpcai500 {

struct VariationReport {
    std::string workload_id;
    int runs = 0;
    double mean_epochs = 0.0;
    double stddev_epochs = 0.0;  // sample (N-1) standard deviation
    double variation = 0.0;      // stddev / mean, stored as a fraction
};

// Throws std::invalid_argument for fewer than two samples or a sample <= 0.
VariationReport variation(std::span<const double> epochs_samples, std::string workload_id = {});

enum class Repeatability { repeatable, unrepeatable };

inline constexpr double kDefaultRepeatabilityThreshold = 0.02;

std::string_view to_string(Repeatability r);

// Boundary inclusive: variation == threshold is repeatable.
Repeatability classify_repeatability(const VariationReport& report,
                                     double threshold = kDefaultRepeatabilityThreshold);

// Which RunRecord attributes separate groups of repeated runs.
//   benchmark: benchmark_id
//   system:    system_name
//   config:    accelerator_count, precision_mode, comm_compression, and seed
//              when the run records one
struct GroupBy {
    bool benchmark = true;
    bool system = true;
    bool config = true;

    // Comma-separated subset of "benchmark,system,config". Throws
    // std::invalid_argument on unknown names.
    static GroupBy parse(std::string_view text);
};

struct RunGroup {
    std::string benchmark_id;  // empty when not grouped by benchmark
    std::string system_name;   // empty when not grouped by system
    std::string config_key;    // empty when not grouped by config
    std::vector<double> epochs;
    std::vector<std::string> run_ids;
};

// Canonical configuration key, e.g. "p=8;precision=fp32;compression=0;seed=7".
std::string config_key(const RunRecord& run);

// Groups ordered by key; runs keep file order inside a group.
std::vector<RunGroup> group_runs(std::span<const RunRecord> runs, const GroupBy& by);

}  // namespace hpcai500
