// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "hpcai500/scoring.hpp"
#include "oracles.hpp"

using namespace hpcai500;

namespace {

RunRecord make_run(std::string benchmark, double flops, double quality, std::int64_t epochs, double seconds = 7200) {
    RunRecord r;
    r.run_id = "r";
    r.benchmark_id = std::move(benchmark);
    r.system_name = "sys";
    r.accelerator_count = 64;
    r.sustained_flops = flops;
    r.achieved_quality = quality;
    r.epochs_run = epochs;
    r.wall_clock_seconds = seconds;
    return r;
}

const BenchmarkSpec& ic() { return Registry::builtin().lookup("image_classification"); }
const BenchmarkSpec& ewa() { return Registry::builtin().lookup("ewa"); }

}  // namespace

TEST_CASE("penalty coefficient") {
    CHECK(penalty_coefficient(0.763, 0.763, 5) == 1.0);
    CHECK(penalty_coefficient(0.0, 0.35, 10) == 0.0);
    CHECK(penalty_coefficient(0.755, 0.763, 5) == doctest::Approx(oracle::kPenaltyIcShortfall).epsilon(1e-14));
    CHECK(penalty_coefficient(0.30, 0.35, 10) == doctest::Approx(oracle::kPenaltyEwaShortfall).epsilon(1e-14));
    CHECK(std::abs(penalty_coefficient(0.755, 0.763, 5) - 0.94866) < 1e-5);
    CHECK(std::abs(penalty_coefficient(0.30, 0.35, 10) - 0.21405) < 1e-5);
    CHECK(penalty_coefficient(0.8, 0.763, 5) > 1.0);

    CHECK_THROWS_AS(penalty_coefficient(0.5, 0.0, 5), std::domain_error);
    CHECK_THROWS_AS(penalty_coefficient(0.5, -0.1, 5), std::domain_error);
    CHECK_THROWS_AS(penalty_coefficient(-0.01, 0.5, 5), std::domain_error);
    CHECK_THROWS_AS(penalty_coefficient(0.5, 0.5, 0), std::domain_error);
}

TEST_CASE("vflops") {
    CHECK(vflops(939e12, 1.0) == 939e12);
    CHECK(vflops(109e12, 1.0) == 109e12);
    CHECK(std::abs(vflops(414e12, 0.94866) - 392.75e12) < 1e10);
    CHECK_THROWS_AS(vflops(std::numeric_limits<double>::infinity(), 1.0), std::invalid_argument);
}

TEST_CASE("time to quality") {
    CHECK(time_to_quality(make_run("image_classification", 1e15, 0.763, 90, 7200), ic()) == 7200.0);
    CHECK_FALSE(time_to_quality(make_run("image_classification", 1e15, 0.70, 90), ic()));
    CHECK(time_to_quality(make_run("image_classification", 1e15, 0.77, 90, 100), ic()) == 100.0);
}

TEST_CASE("score_run") {
    SUBCASE("valid IC run at target") {
        const auto s = score_run(make_run("image_classification", 939e12, 0.763, 90), ic());
        CHECK(s.vflops == 939e12);
        CHECK(s.penalty_coefficient == 1.0);
        CHECK(s.valid);
        CHECK_FALSE(s.above_target());
    }
    SUBCASE("wrong epochs: same numbers, flagged invalid") {
        const auto good = score_run(make_run("image_classification", 939e12, 0.763, 90), ic());
        const auto bad = score_run(make_run("image_classification", 939e12, 0.763, 50), ic());
        CHECK(bad.vflops == good.vflops);
        CHECK(bad.penalty_coefficient == good.penalty_coefficient);
        CHECK_FALSE(bad.valid);
        CHECK(bad.violations.size() == 1);
    }
    SUBCASE("EWA under target") {
        const auto s = score_run(make_run("ewa", 109e12, 0.30, 50), ewa());
        CHECK(std::abs(s.vflops - 23.33e12) < 1e10);
        CHECK(s.vflops == doctest::Approx(109e12 * oracle::kPenaltyEwaShortfall).epsilon(1e-14));
        CHECK_FALSE(s.time_to_quality_seconds);
    }
    SUBCASE("above target is awarded and flagged") {
        const auto s = score_run(make_run("ewa", 100e12, 0.40, 50), ewa());
        CHECK(s.above_target());
        CHECK(s.vflops > 100e12);
    }
    SUBCASE("undefined arithmetic scores zero and is invalid") {
        const auto s = score_run(make_run("ewa", 100e12, -0.1, 50), ewa());
        CHECK(s.vflops == 0.0);
        CHECK_FALSE(s.valid);
    }
    SUBCASE("unknown benchmark") {
        CHECK_THROWS_AS(score_run(make_run("speech2text", 1e12, 0.5, 1), Registry::builtin()),
                        UnknownBenchmarkError);
        CHECK_THROWS_AS(score_run(make_run("ewa", 1e12, 0.5, 1), ic()), std::invalid_argument);
    }
}

TEST_CASE("scoring properties over randomized inputs") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10000; ++i) {
        const double target = testgen::uniform(rng, 0.05, 1.0);
        const int n = static_cast<int>(testgen::integer(rng, 1, 12));
        const double flops = testgen::uniform(rng, 1e12, 1e18);
        const double a1 = testgen::uniform(rng, 0.0, 1.0);
        const double a2 = a1 + testgen::uniform(rng, 1e-6, 1.0 - a1 + 1e-6);

        // Monotone in achieved quality.
        CHECK(vflops(flops, penalty_coefficient(a1, target, n)) < vflops(flops, penalty_coefficient(a2, target, n)));

        // n=10 bites harder than n=5 below target.
        const double below = testgen::uniform(rng, 1e-3, 0.999) * target;
        CHECK(penalty_coefficient(below, target, 10) < penalty_coefficient(below, target, 5));

        // Homogeneous: powers of two scale exactly.
        const double p = penalty_coefficient(a1, target, n);
        const double c = std::ldexp(1.0, static_cast<int>(testgen::integer(rng, -20, 20)));
        CHECK(vflops(c * flops, p) == c * vflops(flops, p));
    }
}
