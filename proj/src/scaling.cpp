// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include "hpcai500/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hpcai500/numfmt.hpp"

namespace hpcai500 {

ScalingCurve scaling_curve(std::span<const RunRecord> runs, std::int64_t baseline_scale) {
    if (runs.empty()) throw std::invalid_argument("scaling curve: no runs");
    const auto& first = runs.front();
    for (const auto& r : runs) {
        if (r.benchmark_id != first.benchmark_id || r.system_name != first.system_name ||
            r.precision_mode != first.precision_mode || r.comm_compression != first.comm_compression)
            throw std::invalid_argument("scaling curve: run " + r.run_id +
                                        " differs in benchmark, system, precision or compression from run " +
                                        first.run_id);
        if (!(r.sustained_flops > 0.0) || !std::isfinite(r.sustained_flops))
            throw std::invalid_argument("scaling curve: run " + r.run_id + " has non-positive sustained_flops");
        if (r.accelerator_count < 1)
            throw std::invalid_argument("scaling curve: run " + r.run_id + " has accelerator_count < 1");
    }

    std::vector<const RunRecord*> sorted;
    for (const auto& r : runs) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const RunRecord* a, const RunRecord* b) { return a->accelerator_count < b->accelerator_count; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i]->accelerator_count == sorted[i - 1]->accelerator_count)
            throw std::invalid_argument("scaling curve: duplicate scale " +
                                        std::to_string(sorted[i]->accelerator_count) + " (runs " +
                                        sorted[i - 1]->run_id + ", " + sorted[i]->run_id + ")");

    auto base = std::find_if(sorted.begin(), sorted.end(),
                             [&](const RunRecord* r) { return r->accelerator_count == baseline_scale; });
    if (base == sorted.end())
        throw std::invalid_argument("scaling curve: no run at baseline scale " + std::to_string(baseline_scale));
    const double base_flops = (*base)->sustained_flops;

    ScalingCurve curve;
    curve.benchmark_id = first.benchmark_id;
    curve.system_name = first.system_name;
    curve.precision_mode = first.precision_mode;
    curve.comm_compression = first.comm_compression;
    curve.baseline_scale = baseline_scale;
    for (const auto* r : sorted) {
        ScalingPoint pt;
        pt.scale = r->accelerator_count;
        pt.sustained_flops = r->sustained_flops;
        pt.speedup = r->sustained_flops / base_flops;
        pt.efficiency = pt.speedup / (static_cast<double>(pt.scale) / static_cast<double>(baseline_scale));
        if (pt.efficiency > 1.0)
            curve.warnings.push_back("superlinear efficiency " + format_shortest(pt.efficiency) + " at scale " +
                                     std::to_string(pt.scale));
        curve.points.push_back(pt);
    }
    return curve;
}

std::string_view to_string(Topology t) { return t == Topology::ring ? "ring" : "double_binary_tree"; }

std::optional<Topology> parse_topology(std::string_view text) {
    if (text == "ring") return Topology::ring;
    if (text == "double_binary_tree") return Topology::double_binary_tree;
    return std::nullopt;
}

void check_model(const CommModel& m) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!(std::isfinite(m.model_bytes) && m.model_bytes >= 0.0))
        throw std::invalid_argument("comm model: model_bytes must be finite and >= 0");
    if (!positive(m.per_device_compute_seconds))
        throw std::invalid_argument("comm model: per_device_compute_seconds must be > 0");
    if (!positive(m.intra_node_bandwidth) || !positive(m.inter_node_bandwidth))
        throw std::invalid_argument("comm model: bandwidths must be > 0");
    if (m.devices_per_node < 1) throw std::invalid_argument("comm model: devices_per_node must be >= 1");
}

double allreduce_bytes_per_device(double model_bytes, std::int64_t p, Topology /*topology*/) {
    if (p < 1) throw std::invalid_argument("all-reduce needs p >= 1, got " + std::to_string(p));
    const auto pd = static_cast<double>(p);
    return 2.0 * (pd - 1.0) / pd * model_bytes;
}

Prediction predict(const CommModel& model, std::int64_t p) {
    check_model(model);
    Prediction out;
    out.scale = p;
    const double payload = model.compression ? model.model_bytes / 2.0 : model.model_bytes;
    out.comm_bytes = allreduce_bytes_per_device(payload, p, model.topology);
    out.bandwidth = p <= model.devices_per_node ? model.intra_node_bandwidth : model.inter_node_bandwidth;
    out.compute_seconds = model.per_device_compute_seconds;
    out.comm_seconds = out.comm_bytes / out.bandwidth;
    out.efficiency = out.compute_seconds / (out.compute_seconds + out.comm_seconds);
    return out;
}

double predict_efficiency(const CommModel& model, std::int64_t p) { return predict(model, p).efficiency; }

std::string write_scaling_csv(const ScalingCurve& curve) {
    std::string out = "scale,flops,speedup,efficiency\n";
    for (const auto& pt : curve.points)
        out += std::to_string(pt.scale) + ',' + format_shortest(pt.sustained_flops) + ',' +
               format_shortest(pt.speedup) + ',' + format_shortest(pt.efficiency) + '\n';
    return out;
}

std::string write_prediction_csv(std::span<const Prediction> predictions) {
    std::string out = "scale,comm_bytes,bandwidth,compute_seconds,comm_seconds,efficiency\n";
    for (const auto& p : predictions)
        out += std::to_string(p.scale) + ',' + format_shortest(p.comm_bytes) + ',' + format_shortest(p.bandwidth) +
               ',' + format_shortest(p.compute_seconds) + ',' + format_shortest(p.comm_seconds) + ',' +
               format_shortest(p.efficiency) + '\n';
    return out;
}

}  // namespace hpcai500
