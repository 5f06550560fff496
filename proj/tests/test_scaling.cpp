// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "hpcai500/scaling.hpp"

using namespace hpcai500;

namespace {

std::vector<RunRecord> curve_runs(std::initializer_list<std::pair<std::int64_t, double>> points) {
    std::vector<RunRecord> out;
    for (auto [p, flops] : points) {
        RunRecord r;
        r.run_id = "p" + std::to_string(p);
        r.benchmark_id = "image_classification";
        r.system_name = "cluster";
        r.accelerator_count = p;
        r.sustained_flops = flops;
        out.push_back(r);
    }
    return out;
}

CommModel model(double bytes) {
    CommModel m;
    m.model_bytes = bytes;
    m.per_device_compute_seconds = 0.25;
    m.intra_node_bandwidth = 100e9;
    m.inter_node_bandwidth = 3e9;
    m.devices_per_node = 8;
    return m;
}

}  // namespace

TEST_CASE("scaling curve examples") {
    const auto c = scaling_curve(curve_runs({{16, 182e12}, {8, 100e12}}), 8);
    REQUIRE(c.points.size() == 2);
    CHECK(c.points[0].scale == 8);
    CHECK(c.points[0].efficiency == 1.0);
    CHECK(c.points[1].efficiency == doctest::Approx(0.91).epsilon(1e-12));
    CHECK(c.points[1].speedup == doctest::Approx(1.82).epsilon(1e-12));

    CHECK(scaling_curve(curve_runs({{8, 3e13}, {64, 24e13}}), 8).points[1].efficiency == 1.0);
    CHECK(std::abs(scaling_curve(curve_runs({{8, 60.74e12}, {64, 345e12}}), 8).points[1].efficiency - 0.71) < 0.005);

    const auto super = scaling_curve(curve_runs({{8, 1e12}, {16, 2.2e12}}), 8);
    CHECK(super.points[1].efficiency > 1.0);
    CHECK(super.warnings.size() == 1);
}

TEST_CASE("scaling curve errors") {
    CHECK_THROWS_AS(scaling_curve(curve_runs({{16, 1e12}}), 8), std::invalid_argument);
    CHECK_THROWS_AS(scaling_curve(curve_runs({{8, 1e12}, {8, 2e12}}), 8), std::invalid_argument);
    CHECK_THROWS_AS(scaling_curve(curve_runs({{8, 0.0}}), 8), std::invalid_argument);
    CHECK_THROWS_AS(scaling_curve({}, 8), std::invalid_argument);
    auto mixed = curve_runs({{8, 1e12}, {16, 2e12}});
    mixed[1].precision_mode = PrecisionMode::mixed;
    CHECK_THROWS_AS(scaling_curve(mixed, 8), std::invalid_argument);
}

TEST_CASE("baseline efficiency is exactly one") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 1000; ++i) {
        const double base = testgen::uniform(rng, 1e9, 1e18);
        const auto c = scaling_curve(curve_runs({{8, base}, {32, testgen::uniform(rng, 1e9, 1e18)}}), 8);
        CHECK(c.points[0].efficiency == 1.0);
    }
}

TEST_CASE("all-reduce volume") {
    CHECK(allreduce_bytes_per_device(123.0, 1, Topology::ring) == 0.0);
    CHECK(allreduce_bytes_per_device(100e6, 2, Topology::ring) == 100e6);
    for (std::int64_t p : {1, 2, 4, 8, 64}) {
        const double direct = 2.0 * static_cast<double>(p - 1) / static_cast<double>(p) * 1e8;
        CHECK(allreduce_bytes_per_device(1e8, p, Topology::ring) == doctest::Approx(direct).epsilon(1e-15));
        CHECK(allreduce_bytes_per_device(1e8, p, Topology::double_binary_tree) ==
              allreduce_bytes_per_device(1e8, p, Topology::ring));
    }
    CHECK(allreduce_bytes_per_device(1.0, 1 << 30, Topology::ring) < 2.0);
    CHECK(allreduce_bytes_per_device(1.0, 1 << 30, Topology::ring) > 1.999999);
    CHECK_THROWS_AS(allreduce_bytes_per_device(1.0, 0, Topology::ring), std::invalid_argument);
}

TEST_CASE("prediction examples") {
    CHECK(predict_efficiency(model(1e9), 1) == 1.0);

    CommModel half = model(0.0);
    half.per_device_compute_seconds = 1.0;
    half.model_bytes = 1e9;  // 2 devices in one node: 1e9 bytes at 1e9 B/s
    half.intra_node_bandwidth = 1e9;
    CHECK(predict_efficiency(half, 2) == 0.5);

    const auto p = predict(model(1e8), 64);
    CHECK(p.bandwidth == 3e9);
    CHECK(predict(model(1e8), 8).bandwidth == 100e9);

    CommModel bad = model(1e8);
    bad.inter_node_bandwidth = 0.0;
    CHECK_THROWS_AS(predict(bad, 16), std::invalid_argument);
    bad = model(1e8);
    bad.devices_per_node = 0;
    CHECK_THROWS_AS(predict(bad, 16), std::invalid_argument);
}

TEST_CASE("prediction properties over randomized models") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 10000; ++i) {
        CommModel m;
        m.model_bytes = testgen::uniform(rng, 1e3, 1e10);
        m.per_device_compute_seconds = testgen::uniform(rng, 1e-3, 10.0);
        m.intra_node_bandwidth = testgen::uniform(rng, 1e8, 1e12);
        m.inter_node_bandwidth = testgen::uniform(rng, 1e7, 1e11);
        m.devices_per_node = testgen::integer(rng, 1, 16);
        m.topology = rng() % 2 ? Topology::ring : Topology::double_binary_tree;
        const auto p = testgen::integer(rng, 2, 512);

        const double plain = predict_efficiency(m, p);
        CHECK(plain > 0.0);
        CHECK(plain < 1.0);

        CommModel compressed = m;
        compressed.compression = true;
        CHECK(predict_efficiency(compressed, p) > plain);

        CommModel bigger = m;
        bigger.model_bytes *= testgen::uniform(rng, 1.0, 10.0);
        CHECK(predict_efficiency(bigger, p) <= plain);

        CommModel faster = m;
        faster.intra_node_bandwidth *= testgen::uniform(rng, 1.0, 10.0);
        faster.inter_node_bandwidth *= testgen::uniform(rng, 1.0, 10.0);
        CHECK(predict_efficiency(faster, p) >= plain);
    }
}

TEST_CASE("large gradient payloads scale worse across nodes") {
    const CommModel ic_like = model(100e6);
    const CommModel ewa_like = model(2e9);
    CHECK(predict_efficiency(ewa_like, 64) < predict_efficiency(ic_like, 64));
}

TEST_CASE("csv writers") {
    const auto c = scaling_curve(curve_runs({{8, 100e12}, {16, 182e12}}), 8);
    CHECK(write_scaling_csv(c) == "scale,flops,speedup,efficiency\n8,1e+14,1,1\n16,1.82e+14,1.82,0.91\n");
    const std::vector<Prediction> preds{predict(model(1e8), 1)};
    CHECK(write_prediction_csv(preds) ==
          "scale,comm_bytes,bandwidth,compute_seconds,comm_seconds,efficiency\n1,0,1e+11,0.25,0,1\n");
}
