// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "generators.hpp"
#include "hpcai500/ingest.hpp"

using namespace hpcai500;

namespace {

const std::string kLine =
    R"({"run_id":"r1","benchmark_id":"image_classification","system_name":"sys","accelerator_count":8,)"
    R"("precision_mode":"fp32","comm_compression":false,"sustained_flops":9.39e14,"achieved_quality":0.763,)"
    R"("epochs_run":90,"wall_clock_seconds":7200})";

std::string without(std::string line, const std::string& field) {
    const auto start = line.find("\"" + field + "\"");
    auto end = line.find(',', start);
    if (end == std::string::npos) {
        end = line.find('}', start);
        return line.erase(start - 1, end - start + 1);
    }
    return line.erase(start, end - start + 1);
}

}  // namespace

TEST_CASE("parse_runs: one well-formed line") {
    const auto file = parse_runs_text(kLine + "\n");
    REQUIRE(file.records.size() == 1);
    const auto& r = file.records[0];
    CHECK(r.run_id == "r1");
    CHECK(r.accelerator_count == 8);
    CHECK(r.sustained_flops == 939e12);
    CHECK_FALSE(r.seed);
}

TEST_CASE("parse_runs: missing field names line and field") {
    try {
        (void)parse_runs_text(without(kLine, "sustained_flops"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()) == "line 1: missing field sustained_flops");
        CHECK(e.line() == 1);
        CHECK(e.field() == "sustained_flops");
    }
}

TEST_CASE("parse_runs: duplicate run ids report both lines") {
    try {
        (void)parse_runs_text(kLine + "\n# comment\n" + kLine + "\n");
        FAIL("expected DuplicateIdError");
    } catch (const DuplicateIdError& e) {
        CHECK(e.id() == "r1");
        CHECK(e.first_line() == 1);
        CHECK(e.line() == 3);
        const std::string msg = e.what();
        CHECK(msg.find("line 3") != std::string::npos);
        CHECK(msg.find("line 1") != std::string::npos);
    }
}

TEST_CASE("parse_runs: schema errors") {
    auto error_of = [](const std::string& text) {
        try {
            (void)parse_runs_text(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };

    std::string typo = kLine;
    typo.replace(typo.find("achieved_quality"), 16, "achived_quality");
    CHECK(error_of(typo) == "line 1: unknown field achived_quality");

    std::string bad_mode = kLine;
    bad_mode.replace(bad_mode.find("\"fp32\""), 6, "\"fp16\"");
    CHECK(error_of(bad_mode).find("precision_mode") != std::string::npos);

    std::string str_number = kLine;
    str_number.replace(str_number.find("9.39e14"), 7, "\"9.39e14\"");
    CHECK(error_of(str_number) == "line 1: field sustained_flops: expected number");

    std::string float_count = kLine;
    float_count.replace(float_count.find("\"accelerator_count\":8"), 21, "\"accelerator_count\":8.5");
    CHECK(error_of(float_count) == "line 1: field accelerator_count: expected integer");

    CHECK(error_of("\n\n{not json\n").starts_with("line 3: malformed record"));
    CHECK(error_of("[1,2]").starts_with("line 1: record must be a JSON object"));

    std::string nan = kLine;
    nan.replace(nan.find("9.39e14"), 7, "NaN");
    CHECK(error_of(nan).starts_with("line 1: malformed record"));

    std::string huge = kLine;
    huge.replace(huge.find("9.39e14"), 7, "1e400");
    CHECK(error_of(huge) != "no error");

    CHECK(error_of("# format_version 2\n" + kLine).find("unsupported format_version") != std::string::npos);
    CHECK(error_of("# format_version 1\n" + kLine) == "no error");
}

TEST_CASE("parse_runs: seed may be null or an integer") {
    std::string with_seed = kLine;
    with_seed.insert(with_seed.size() - 1, ",\"seed\":7");
    CHECK(*parse_runs_text(with_seed).records[0].seed == 7);
    std::string null_seed = kLine;
    null_seed.insert(null_seed.size() - 1, ",\"seed\":null");
    CHECK_FALSE(parse_runs_text(null_seed).records[0].seed);
}

TEST_CASE("RunReader streams records with line numbers") {
    std::istringstream in(kLine + "\n\n" + kLine.substr(0, kLine.size()));
    RunReader reader(in);
    auto first = reader.next();
    REQUIRE(first);
    CHECK(reader.line() == 1);
    CHECK_THROWS_AS(reader.next(), DuplicateIdError);
}

TEST_CASE("write_runs") {
    CHECK(write_runs(std::span<const RunRecord>{}).empty());
    const auto one = parse_runs_text(kLine).records;
    const auto text = write_runs(one);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    CHECK(text.starts_with(R"({"run_id":"r1","benchmark_id":"image_classification")"));
}

TEST_CASE("parse(write(x)) == x over randomized record lists") {
    std::mt19937_64 rng(20260101);
    for (int trial = 0; trial < 20; ++trial) {
        const auto records = testgen::random_runs(rng, 100);
        CHECK(parse_runs_text(write_runs(records)).records == records);
    }
}

// ---------------------------------------------------------------------------

namespace {

std::string profiles(const std::string& rows) { return std::string(profile_header()) + "\n" + rows; }

std::string profile_error(const std::string& text) {
    try {
        (void)parse_profiles_text(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "no error";
}

}  // namespace

TEST_CASE("parse_profiles normalizes percentages and DRAM levels") {
    const auto dump = parse_profiles_text(profiles("ic,0.5,0.25,87.5%,1,7,25600000,90,4.1e9\nltr,50%,0.1,0.2,0.3,10,,,\n"));
    REQUIRE(dump.vectors.size() == 2);
    const auto& ic = dump.vectors[0];
    CHECK(ic.dram_utilization == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(ic.gld_efficiency == 0.875);
    CHECK(ic.gst_efficiency == 1.0);
    CHECK(*ic.parameter_count == 25600000u);
    CHECK(*ic.epochs_to_quality == 90.0);
    CHECK(ic.has_independent_features());
    const auto& ltr = dump.vectors[1];
    CHECK(ltr.achieved_occupancy == 0.5);
    CHECK(ltr.dram_utilization == 1.0);
    CHECK_FALSE(ltr.parameter_count);
    CHECK_FALSE(ltr.has_independent_features());
}

TEST_CASE("parse_profiles errors") {
    CHECK(profile_error(profiles("a,1.3,0.1,0.1,0.1,1,,,\n")) ==
          "line 2: column achieved_occupancy: value 1.3 outside range [0, 1]");
    CHECK(profile_error(profiles("a,0.1,abc,0.1,0.1,1,,,\n")) ==
          "line 2: column ipc_efficiency: non-numeric value 'abc'");
    CHECK(profile_error(profiles("a,0.1,0.1,0.1,0.1,11,,,\n")).find("dram_utilization") != std::string::npos);
    CHECK(profile_error(profiles("a,0.1,0.1,0.1,0.1,1,1.5,,\n")).find("parameter_count") != std::string::npos);
    CHECK(profile_error(profiles("a,0.1,0.1,0.1,0.1,1,,0,\n")).find("must be > 0") != std::string::npos);
    CHECK(profile_error(profiles("a,0.1,0.1,0.1,0.1,1,\"1,000\",,\n")).find("non-numeric") != std::string::npos);
    CHECK(profile_error(profiles("a,0.1,0.1\n")) == "line 2: expected 9 columns, got 3");
    CHECK(profile_error("workload,occupancy\n").starts_with("line 1: header mismatch"));
    CHECK(profile_error("") == "missing header row");
    CHECK(profile_error(profiles("a,0.1,0.1,0.1,0.1,1,,,\na,0.2,0.1,0.1,0.1,1,,,\n")).find("duplicate id 'a'") !=
          std::string::npos);
}

TEST_CASE("benchmark spec overrides") {
    const auto specs = parse_benchmark_specs(
        R"([{"id":"toy","quality_metric":"f1","target_quality":0.9,"required_epochs":3,"penalty_exponent":2}])");
    REQUIRE(specs.size() == 1);
    CHECK(specs[0].quality_metric.kind == MetricKind::other);
    CHECK(specs[0].quality_metric.higher_is_better);
    CHECK_THROWS_AS(parse_benchmark_specs(R"([{"id":"x","quality_metric":"f1","target_quality":1.5,)"
                                          R"("required_epochs":3,"penalty_exponent":2}])"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_benchmark_specs(R"([{"id":"x","typo":1}])"), std::invalid_argument);
    CHECK_THROWS_AS(parse_benchmark_specs("{"), std::invalid_argument);
}
