// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// VFLOPS ranking lists and their JSON / CSV / Markdown renderings.
//
// Ranks are dense (1, 2, 3, ...) even when VFLOPS tie: the tie-breaks below
// make the order total, so no two entries share a rank.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpcai500/core.hpp"

namespace hpcai500 {

struct RankingEntry {
    int rank = 0;
    std::string system_name;
    std::string benchmark_id;
    std::string run_id;
    double vflops = 0.0;
    double penalty_coefficient = 0.0;
    std::optional<double> time_to_quality_seconds;  // empty: unreached
    std::int64_t scale = 0;
    PrecisionMode precision_mode = PrecisionMode::fp32;
    bool valid = true;

    bool operator==(const RankingEntry&) const = default;
};

struct ScoredRun {
    RunRecord run;
    ScoreReport score;
};

struct RankOptions {
    bool include_invalid = false;
};

// Order: VFLOPS descending, then time-to-quality ascending (unreached last),
// then system name, then run id. Throws std::invalid_argument when the runs
// span several benchmarks.
std::vector<RankingEntry> rank(std::span<const ScoredRun> scored, const RankOptions& options = {});

enum class OutputFormat { json, csv, markdown };

std::optional<OutputFormat> parse_output_format(std::string_view text);

// JSON keeps full precision. CSV and Markdown print VFLOPS with four
// significant digits and an SI unit; a penalty above 1 is marked "(award)" in
// Markdown. Output is byte-identical for identical input.
std::string emit(std::span<const RankingEntry> entries, OutputFormat format);

// Inverse of emit(..., OutputFormat::json). Throws std::invalid_argument.
std::vector<RankingEntry> parse_ranking_json(std::string_view text);

}  // namespace hpcai500
