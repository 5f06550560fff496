// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// Domain types shared by every module and the built-in benchmark registry.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hpcai500 {

enum class MetricKind { map_iou_050, top1_accuracy, other };

// Canonical spelling used in files and output: "map_iou_050", "top1_accuracy",
// or the free-form name carried by an `other` metric.
struct QualityMetric {
    MetricKind kind = MetricKind::other;
    std::string name;
    bool higher_is_better = true;

    static QualityMetric map_iou_050();
    static QualityMetric top1_accuracy();
    static QualityMetric other(std::string name, bool higher_is_better = true);
    // Maps the two well-known spellings onto their kinds, anything else to `other`.
    static QualityMetric from_name(std::string_view name, bool higher_is_better = true);

    bool operator==(const QualityMetric&) const = default;
};

struct BenchmarkSpec {
    std::string id;
    std::string problem_domain;
    std::string model_name;
    std::string dataset_name;
    QualityMetric quality_metric;
    double target_quality = 1.0;  // in (0, 1]
    int required_epochs = 1;
    int penalty_exponent = 1;     // sensitivity exponent n

    bool operator==(const BenchmarkSpec&) const = default;
};

// Throws std::invalid_argument describing the first broken invariant.
void check_spec(const BenchmarkSpec& spec);

enum class PrecisionMode { fp32, mixed };

std::string_view to_string(PrecisionMode mode);
std::optional<PrecisionMode> parse_precision_mode(std::string_view text);

struct RunRecord {
    std::string run_id;
    std::string benchmark_id;
    std::string system_name;
    std::int64_t accelerator_count = 1;
    PrecisionMode precision_mode = PrecisionMode::fp32;
    bool comm_compression = false;
    double sustained_flops = 0.0;   // FLOP/s
    double achieved_quality = 0.0;  // [0, 1]
    std::int64_t epochs_run = 1;
    double wall_clock_seconds = 0.0;
    std::optional<std::int64_t> seed;

    bool operator==(const RunRecord&) const = default;
};

// Five micro-architectural ratios plus the architecture-independent features.
struct ProfileVector {
    std::string workload_id;
    double achieved_occupancy = 0.0;
    double ipc_efficiency = 0.0;
    double gld_efficiency = 0.0;
    double gst_efficiency = 0.0;
    double dram_utilization = 0.0;  // profiler level 0-10, stored divided by 10
    std::optional<std::uint64_t> parameter_count;
    std::optional<double> epochs_to_quality;
    std::optional<double> flops_per_forward;

    bool has_independent_features() const {
        return parameter_count && epochs_to_quality && flops_per_forward;
    }

    bool operator==(const ProfileVector&) const = default;
};

struct ScoreReport {
    std::string run_id;
    std::string benchmark_id;
    double penalty_coefficient = 0.0;
    double vflops = 0.0;
    // Empty when the run never reached the target quality.
    std::optional<double> time_to_quality_seconds;
    bool valid = false;
    std::vector<std::string> violations;

    // Achieved quality exceeded the target, so the FLOPS were awarded.
    bool above_target() const { return penalty_coefficient > 1.0; }

    bool operator==(const ScoreReport&) const = default;
};

class UnknownBenchmarkError : public std::runtime_error {
public:
    UnknownBenchmarkError(std::string id, const std::vector<std::string>& known);
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

// One row of the AIBench Training run-to-run variation table.
struct AIBenchWorkload {
    std::string_view number;  // e.g. "DC-AI-C1"
    std::string_view name;
    std::optional<double> variation;  // fraction; empty when not reported
    std::optional<int> runs;
};

std::span<const AIBenchWorkload> aibench_workloads();

// Immutable id -> spec map. The two HPC AI500 benchmarks are always present;
// overrides may replace or extend them per invocation.
class Registry {
public:
    static const Registry& builtin();

    // Returns a copy with `extra` merged in (same id replaces). Each spec is checked.
    Registry with_overrides(std::span<const BenchmarkSpec> extra) const;

    const BenchmarkSpec& lookup(std::string_view id) const;
    const BenchmarkSpec* find(std::string_view id) const;
    std::vector<std::string> ids() const;

private:
    Registry() = default;
    std::map<std::string, BenchmarkSpec, std::less<>> specs_;
};

inline constexpr std::string_view kEwaId = "ewa";
inline constexpr std::string_view kImageClassificationId = "image_classification";

// Order-stable, one human-readable string per broken rule. Empty means valid.
std::vector<std::string> validate_run(const RunRecord& run, const BenchmarkSpec& spec);

}  // namespace hpcai500
