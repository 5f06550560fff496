// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared ranking fixture used by the golden files.

#pragma once

#include <vector>

#include "hpcai500/report.hpp"
#include "hpcai500/scoring.hpp"

namespace fixture {

inline hpcai500::RunRecord ic_run(std::string id, std::string system, std::int64_t p, hpcai500::PrecisionMode mode,
                                  double flops, double quality, std::int64_t epochs, double seconds) {
    hpcai500::RunRecord r;
    r.run_id = std::move(id);
    r.benchmark_id = "image_classification";
    r.system_name = std::move(system);
    r.accelerator_count = p;
    r.precision_mode = mode;
    r.comm_compression = true;
    r.sustained_flops = flops;
    r.achieved_quality = quality;
    r.epochs_run = epochs;
    r.wall_clock_seconds = seconds;
    return r;
}

inline std::vector<hpcai500::RunRecord> golden_runs() {
    using hpcai500::PrecisionMode;
    return {
        ic_run("fp32-64", "V100 cluster", 64, PrecisionMode::fp32, 414e12, 0.755, 90, 30000),
        ic_run("mixed-64", "V100 cluster", 64, PrecisionMode::mixed, 939e12, 0.765, 90, 12451.25),
        ic_run("odd", "lab \"A\", rack|2", 8, PrecisionMode::fp32, 1.2e14, 0.763, 90, 90000),
        ic_run("short", "cut short", 32, PrecisionMode::mixed, 5e14, 0.763, 60, 8000),
    };
}

inline std::vector<hpcai500::RankingEntry> golden_ranking() {
    const auto& registry = hpcai500::Registry::builtin();
    std::vector<hpcai500::ScoredRun> scored;
    for (const auto& r : golden_runs()) scored.push_back({r, hpcai500::score_run(r, registry)});
    return hpcai500::rank(scored, {.include_invalid = true});
}

}  // namespace fixture
