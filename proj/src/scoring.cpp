// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include "hpcai500/scoring.hpp"

#include <cmath>
#include <stdexcept>

#include "hpcai500/numfmt.hpp"

namespace hpcai500 {

double penalty_coefficient(double achieved_quality, double target_quality, int n) {
    if (!(target_quality > 0.0) || !std::isfinite(target_quality))
        throw std::domain_error("target_quality must be > 0, got " + format_shortest(target_quality));
    if (!(achieved_quality >= 0.0) || !std::isfinite(achieved_quality))
        throw std::domain_error("achieved_quality must be >= 0, got " + format_shortest(achieved_quality));
    if (n < 1) throw std::domain_error("penalty exponent must be >= 1, got " + std::to_string(n));
    return std::pow(achieved_quality / target_quality, n);
}

double vflops(double sustained_flops, double penalty) {
    if (!std::isfinite(sustained_flops) || !std::isfinite(penalty))
        throw std::invalid_argument("vflops inputs must be finite");
    return sustained_flops * penalty;
}

std::optional<double> time_to_quality(const RunRecord& run, const BenchmarkSpec& spec) {
    if (run.achieved_quality < spec.target_quality) return std::nullopt;
    return run.wall_clock_seconds;
}

ScoreReport score_run(const RunRecord& run, const BenchmarkSpec& spec) {
    if (run.benchmark_id != spec.id)
        throw std::invalid_argument("run " + run.run_id + " is for benchmark " + run.benchmark_id +
                                    ", not " + spec.id);
    ScoreReport report;
    report.run_id = run.run_id;
    report.benchmark_id = run.benchmark_id;
    report.violations = validate_run(run, spec);
    report.valid = report.violations.empty();

    const bool defined = std::isfinite(run.achieved_quality) && run.achieved_quality >= 0.0 &&
                         std::isfinite(run.sustained_flops) && run.sustained_flops > 0.0;
    if (defined) {
        report.penalty_coefficient =
            penalty_coefficient(run.achieved_quality, spec.target_quality, spec.penalty_exponent);
        report.vflops = vflops(run.sustained_flops, report.penalty_coefficient);
    }
    if (run.wall_clock_seconds > 0.0) report.time_to_quality_seconds = time_to_quality(run, spec);
    return report;
}

ScoreReport score_run(const RunRecord& run, const Registry& registry) {
    return score_run(run, registry.lookup(run.benchmark_id));
}

}  // namespace hpcai500
