// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// Measured scaling (speedup, parallel efficiency against a baseline scale) and
// a desk-scale all-reduce model that separates compute-bound from
// communication-bound workloads.
//
// Model limits: compute and communication never overlap, latency terms are
// ignored, and the double binary tree moves the same volume as the ring.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpcai500/core.hpp"

namespace hpcai500 {

struct ScalingPoint {
    std::int64_t scale = 0;
    double sustained_flops = 0.0;
    double speedup = 0.0;     // flops(p) / flops(p0)
    double efficiency = 0.0;  // speedup / (p / p0)
};

struct ScalingCurve {
    std::string benchmark_id;
    std::string system_name;
    PrecisionMode precision_mode = PrecisionMode::fp32;
    bool comm_compression = false;
    std::int64_t baseline_scale = 0;
    std::vector<ScalingPoint> points;  // sorted by scale
    // Superlinear points (efficiency > 1) are kept, not clamped, and noted here.
    std::vector<std::string> warnings;
};

// Runs must share benchmark, system, precision and compression, with one run
// per scale. Throws std::invalid_argument on a missing baseline, a duplicate
// scale or mixed runs.
ScalingCurve scaling_curve(std::span<const RunRecord> runs, std::int64_t baseline_scale);

enum class Topology { ring, double_binary_tree };

std::string_view to_string(Topology t);
std::optional<Topology> parse_topology(std::string_view text);

struct CommModel {
    double model_bytes = 0.0;  // gradient payload per step
    double per_device_compute_seconds = 1.0;
    double intra_node_bandwidth = 1.0;  // bytes/s
    double inter_node_bandwidth = 1.0;  // bytes/s
    std::int64_t devices_per_node = 1;
    bool compression = false;  // halves the payload
    Topology topology = Topology::ring;
};

// Throws std::invalid_argument describing the first broken invariant.
void check_model(const CommModel& model);

// Bytes each device sends per all-reduce: 2 (p - 1) / p * model_bytes.
double allreduce_bytes_per_device(double model_bytes, std::int64_t p, Topology topology);

struct Prediction {
    std::int64_t scale = 0;
    double comm_bytes = 0.0;
    double bandwidth = 0.0;
    double compute_seconds = 0.0;
    double comm_seconds = 0.0;
    double efficiency = 0.0;  // compute / (compute + comm)
};

Prediction predict(const CommModel& model, std::int64_t p);
double predict_efficiency(const CommModel& model, std::int64_t p);

std::string write_scaling_csv(const ScalingCurve& curve);
std::string write_prediction_csv(std::span<const Prediction> predictions);

}  // namespace hpcai500
