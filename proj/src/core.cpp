// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include "hpcai500/core.hpp"

#include <array>
#include <cmath>

#include "hpcai500/numfmt.hpp"

namespace hpcai500 {

QualityMetric QualityMetric::map_iou_050() {
    return {MetricKind::map_iou_050, "map_iou_050", true};
}

QualityMetric QualityMetric::top1_accuracy() {
    return {MetricKind::top1_accuracy, "top1_accuracy", true};
}

QualityMetric QualityMetric::other(std::string name, bool higher_is_better) {
    return {MetricKind::other, std::move(name), higher_is_better};
}

QualityMetric QualityMetric::from_name(std::string_view name, bool higher_is_better) {
    if (name == "map_iou_050" && higher_is_better) return map_iou_050();
    if (name == "top1_accuracy" && higher_is_better) return top1_accuracy();
    return other(std::string(name), higher_is_better);
}

void check_spec(const BenchmarkSpec& spec) {
    if (spec.id.empty()) throw std::invalid_argument("benchmark spec id must not be empty");
    const auto where = "benchmark spec '" + spec.id + "': ";
    if (!(spec.target_quality > 0.0 && spec.target_quality <= 1.0))
        throw std::invalid_argument(where + "target_quality " + format_shortest(spec.target_quality) +
                                    " outside range (0, 1]");
    if (spec.required_epochs < 1)
        throw std::invalid_argument(where + "required_epochs must be >= 1");
    if (spec.penalty_exponent < 1)
        throw std::invalid_argument(where + "penalty_exponent must be >= 1");
    if (spec.quality_metric.name.empty())
        throw std::invalid_argument(where + "quality_metric name must not be empty");
}

std::string_view to_string(PrecisionMode mode) {
    return mode == PrecisionMode::fp32 ? "fp32" : "mixed";
}

std::optional<PrecisionMode> parse_precision_mode(std::string_view text) {
    if (text == "fp32") return PrecisionMode::fp32;
    if (text == "mixed") return PrecisionMode::mixed;
    return std::nullopt;
}

namespace {

std::string unknown_message(const std::string& id, const std::vector<std::string>& known) {
    std::string msg = "unknown benchmark id '" + id + "'; known ids:";
    for (const auto& k : known) msg += " " + k;
    return msg;
}

// Run-to-run variation table of AIBench Training (variation as a fraction).
constexpr std::array<AIBenchWorkload, 17> kAIBench = {{
    {"DC-AI-C1", "Image classification", 0.0112, 5},
    {"DC-AI-C2", "Image generation", std::nullopt, std::nullopt},
    {"DC-AI-C3", "Text-to-Text translation", 0.0938, 6},
    {"DC-AI-C4", "Image-to-Text", 0.2353, 5},
    {"DC-AI-C5", "Image-to-Image", std::nullopt, std::nullopt},
    {"DC-AI-C6", "Speech recognition", 0.1208, 4},
    {"DC-AI-C7", "Face embedding", 0.0573, 8},
    {"DC-AI-C8", "3D Face Recognition", 0.3846, 4},
    {"DC-AI-C9", "Object detection", 0.0, 10},
    {"DC-AI-C10", "Recommendation", 0.0995, 5},
    {"DC-AI-C11", "Video prediction", 0.1183, 4},
    {"DC-AI-C12", "Image compression", 0.2249, 4},
    {"DC-AI-C13", "3D object reconstruction", 0.1607, 4},
    {"DC-AI-C14", "Text summarization", 0.2472, 5},
    {"DC-AI-C15", "Spatial transformer", 0.0729, 4},
    {"DC-AI-C16", "Learning to rank", 0.0190, 4},
    {"DC-AI-C17", "Neural Architecture Search", 0.0615, 6},
}};

}  // namespace

UnknownBenchmarkError::UnknownBenchmarkError(std::string id, const std::vector<std::string>& known)
    : std::runtime_error(unknown_message(id, known)), id_(std::move(id)) {}

std::span<const AIBenchWorkload> aibench_workloads() { return kAIBench; }

const Registry& Registry::builtin() {
    static const Registry registry = [] {
        Registry r;
        r.specs_.emplace(std::string(kEwaId),
                         BenchmarkSpec{std::string(kEwaId), "Extreme Weather Analytics", "Faster-RCNN",
                                       "EWA", QualityMetric::map_iou_050(), 0.35, 50, 10});
        r.specs_.emplace(std::string(kImageClassificationId),
                         BenchmarkSpec{std::string(kImageClassificationId), "Image Classification",
                                       "ResNet-50 v1.5", "ImageNet", QualityMetric::top1_accuracy(),
                                       0.763, 90, 5});
        return r;
    }();
    return registry;
}

Registry Registry::with_overrides(std::span<const BenchmarkSpec> extra) const {
    Registry copy = *this;
    for (const auto& spec : extra) {
        check_spec(spec);
        copy.specs_.insert_or_assign(spec.id, spec);
    }
    return copy;
}

const BenchmarkSpec* Registry::find(std::string_view id) const {
    auto it = specs_.find(id);
    return it == specs_.end() ? nullptr : &it->second;
}

const BenchmarkSpec& Registry::lookup(std::string_view id) const {
    if (const auto* spec = find(id)) return *spec;
    throw UnknownBenchmarkError(std::string(id), ids());
}

std::vector<std::string> Registry::ids() const {
    std::vector<std::string> out;
    out.reserve(specs_.size());
    for (const auto& [id, spec] : specs_) out.push_back(id);
    return out;
}

std::vector<std::string> validate_run(const RunRecord& run, const BenchmarkSpec& spec) {
    std::vector<std::string> v;
    if (run.run_id.empty()) v.emplace_back("run_id must not be empty");
    if (run.benchmark_id != spec.id)
        v.push_back("benchmark_id " + run.benchmark_id + " does not match spec " + spec.id);
    if (!spec.quality_metric.higher_is_better)
        v.push_back("quality metric " + spec.quality_metric.name +
                    " is lower-is-better; the penalty coefficient needs a higher-is-better metric");
    if (run.accelerator_count < 1)
        v.push_back("accelerator_count " + std::to_string(run.accelerator_count) + " must be >= 1");
    if (!(std::isfinite(run.sustained_flops) && run.sustained_flops > 0.0))
        v.push_back("sustained_flops " + format_shortest(run.sustained_flops) + " must be > 0");
    if (!(run.achieved_quality >= 0.0 && run.achieved_quality <= 1.0))
        v.push_back("achieved_quality " + format_shortest(run.achieved_quality) +
                    " outside range [0, 1]");
    if (run.epochs_run != spec.required_epochs)
        v.push_back("epochs_run " + std::to_string(run.epochs_run) + " != required " +
                    std::to_string(spec.required_epochs));
    if (!(std::isfinite(run.wall_clock_seconds) && run.wall_clock_seconds > 0.0))
        v.push_back("wall_clock_seconds " + format_shortest(run.wall_clock_seconds) + " must be > 0");
    return v;
}

}  // namespace hpcai500
