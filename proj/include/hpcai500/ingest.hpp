// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// On-disk formats.
//
// Run records: UTF-8, one JSON object per line, keys exactly the RunRecord
// field names (`seed` may be absent or null). Lines starting with '#' are
// comments; `# format_version 1` pins the format. Blank lines are skipped.
//
// Profile dumps: UTF-8 CSV with the header returned by profile_header(). The
// four efficiency ratios accept fractions ("0.875") or percentages ("87.5%");
// dram_utilization is the profiler's 0-10 level and is stored divided by 10.
// The trailing three columns may be empty.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hpcai500/core.hpp"

namespace hpcai500 {

inline constexpr int kRunsFormatVersion = 1;
inline constexpr int kProfilesFormatVersion = 1;

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::string field, const std::string& message);
    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

class DuplicateIdError : public ParseError {
public:
    DuplicateIdError(std::string id, std::size_t first_line, std::size_t second_line);
    const std::string& id() const noexcept { return id_; }
    std::size_t first_line() const noexcept { return first_line_; }

private:
    std::string id_;
    std::size_t first_line_;
};

struct RunFile {
    std::string path;
    std::vector<RunRecord> records;
};

struct ProfileDump {
    std::string path;
    std::vector<ProfileVector> vectors;
};

// Pulls one record at a time so arbitrarily large files stream in bounded
// memory (only the run_id -> line index grows).
class RunReader {
public:
    explicit RunReader(std::istream& in) : in_(in) {}

    std::optional<RunRecord> next();
    std::size_t line() const noexcept { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
    std::map<std::string, std::size_t, std::less<>> seen_;
};

RunRecord parse_run_line(std::string_view line, std::size_t line_no);
RunFile parse_runs(std::istream& in, std::string path = {});
RunFile parse_runs_text(std::string_view text);

std::string write_run_line(const RunRecord& record);
void write_runs(std::ostream& out, std::span<const RunRecord> records);
std::string write_runs(std::span<const RunRecord> records);

std::string_view profile_header();
ProfileDump parse_profiles(std::istream& in, std::string path = {});
ProfileDump parse_profiles_text(std::string_view text);

// JSON array of benchmark spec objects (registry overrides). Throws
// std::invalid_argument on schema errors.
std::vector<BenchmarkSpec> parse_benchmark_specs(std::string_view json_text);

}  // namespace hpcai500
