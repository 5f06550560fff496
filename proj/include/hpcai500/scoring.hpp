// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// Valid FLOPS: sustained throughput scaled by a quality penalty coefficient.
// All arithmetic is binary64.

#pragma once

#include <optional>

#include "hpcai500/core.hpp"

namespace hpcai500 {

// (achieved / target)^n. Not clamped: values above 1 award above-target
// quality. Throws std::domain_error if target <= 0, achieved < 0 or n < 1.
double penalty_coefficient(double achieved_quality, double target_quality, int n);

// sustained_flops * penalty. Throws std::invalid_argument on non-finite input.
double vflops(double sustained_flops, double penalty);

// Wall clock of a run that met or exceeded the target; empty ("unreached")
// otherwise.
std::optional<double> time_to_quality(const RunRecord& run, const BenchmarkSpec& spec);

// Runs that fail validation are still scored; they carry valid=false and the
// violation list. When the arithmetic itself is undefined (negative quality,
// non-positive or non-finite throughput) penalty and vflops are reported as 0.
// Throws std::invalid_argument if run.benchmark_id != spec.id.
ScoreReport score_run(const RunRecord& run, const BenchmarkSpec& spec);

// Looks up the benchmark first; throws UnknownBenchmarkError.
ScoreReport score_run(const RunRecord& run, const Registry& registry);

}  // namespace hpcai500
