// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include "hpcai500/ingest.hpp"

#include <array>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "hpcai500/numfmt.hpp"
#include "json.hpp"

namespace hpcai500 {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, 11> kRunFields = {
    "run_id",          "benchmark_id",     "system_name", "accelerator_count",
    "precision_mode",  "comm_compression", "sustained_flops", "achieved_quality",
    "epochs_run",      "wall_clock_seconds", "seed"};

std::string line_prefix(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Returns true when `line` is a comment; validates a format_version pin.
bool handle_comment(std::string_view line, std::size_t line_no, int supported) {
    if (line.empty() || line.front() != '#') return false;
    auto body = trim(line.substr(1));
    constexpr std::string_view kKey = "format_version";
    if (body.starts_with(kKey)) {
        auto value = trim(body.substr(kKey.size()));
        if (!value.empty() && (value.front() == ':' || value.front() == '='))
            value = trim(value.substr(1));
        if (value != std::to_string(supported))
            throw ParseError(line_no, "format_version",
                             "unsupported format_version '" + std::string(value) + "' (expected " +
                                 std::to_string(supported) + ")");
    }
    return true;
}

const json& require(const json& obj, std::string_view name, std::size_t line) {
    auto it = obj.find(name);
    if (it == obj.end()) throw ParseError(line, std::string(name), "missing field " + std::string(name));
    return *it;
}

std::string get_string(const json& obj, std::string_view name, std::size_t line) {
    const auto& v = require(obj, name, line);
    if (!v.is_string())
        throw ParseError(line, std::string(name), "field " + std::string(name) + ": expected string");
    return v.get<std::string>();
}

std::int64_t to_int(const json& v, std::string_view name, std::size_t line) {
    if (v.is_number_unsigned()) {
        auto u = v.get<std::uint64_t>();
        if (u > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            throw ParseError(line, std::string(name), "field " + std::string(name) + ": integer overflow");
        return static_cast<std::int64_t>(u);
    }
    if (v.is_number_integer()) return v.get<std::int64_t>();
    throw ParseError(line, std::string(name), "field " + std::string(name) + ": expected integer");
}

std::int64_t get_int(const json& obj, std::string_view name, std::size_t line) {
    return to_int(require(obj, name, line), name, line);
}

double get_double(const json& obj, std::string_view name, std::size_t line) {
    const auto& v = require(obj, name, line);
    if (!v.is_number())
        throw ParseError(line, std::string(name), "field " + std::string(name) + ": expected number");
    const double d = v.get<double>();
    if (!std::isfinite(d))
        throw ParseError(line, std::string(name), "field " + std::string(name) + ": non-finite number");
    return d;
}

bool get_bool(const json& obj, std::string_view name, std::size_t line) {
    const auto& v = require(obj, name, line);
    if (!v.is_boolean())
        throw ParseError(line, std::string(name), "field " + std::string(name) + ": expected boolean");
    return v.get<bool>();
}

}  // namespace

ParseError::ParseError(std::size_t line, std::string field, const std::string& message)
    : std::runtime_error(line > 0 ? line_prefix(line) + message : message),
      line_(line),
      field_(std::move(field)) {}

DuplicateIdError::DuplicateIdError(std::string id, std::size_t first_line, std::size_t second_line)
    : ParseError(second_line, "id",
                 "duplicate id '" + id + "' (first seen on line " + std::to_string(first_line) + ")"),
      id_(std::move(id)),
      first_line_(first_line) {}

RunRecord parse_run_line(std::string_view line, std::size_t line_no) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::exception& e) {
        throw ParseError(line_no, "", std::string("malformed record: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(line_no, "", "record must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (auto f : kRunFields) known = known || f == key;
        if (!known) throw ParseError(line_no, key, "unknown field " + key);
    }

    RunRecord r;
    r.run_id = get_string(obj, "run_id", line_no);
    r.benchmark_id = get_string(obj, "benchmark_id", line_no);
    r.system_name = get_string(obj, "system_name", line_no);
    r.accelerator_count = get_int(obj, "accelerator_count", line_no);
    const auto mode = get_string(obj, "precision_mode", line_no);
    auto parsed_mode = parse_precision_mode(mode);
    if (!parsed_mode)
        throw ParseError(line_no, "precision_mode",
                         "field precision_mode: expected \"fp32\" or \"mixed\", got \"" + mode + "\"");
    r.precision_mode = *parsed_mode;
    r.comm_compression = get_bool(obj, "comm_compression", line_no);
    r.sustained_flops = get_double(obj, "sustained_flops", line_no);
    r.achieved_quality = get_double(obj, "achieved_quality", line_no);
    r.epochs_run = get_int(obj, "epochs_run", line_no);
    r.wall_clock_seconds = get_double(obj, "wall_clock_seconds", line_no);
    if (auto it = obj.find("seed"); it != obj.end() && !it->is_null()) r.seed = to_int(*it, "seed", line_no);
    return r;
}

std::optional<RunRecord> RunReader::next() {
    std::string raw;
    while (std::getline(in_, raw)) {
        ++line_;
        auto line = trim(raw);
        if (line.empty() || handle_comment(line, line_, kRunsFormatVersion)) continue;
        auto record = parse_run_line(line, line_);
        auto [it, inserted] = seen_.try_emplace(record.run_id, line_);
        if (!inserted) throw DuplicateIdError(record.run_id, it->second, line_);
        return record;
    }
    return std::nullopt;
}

RunFile parse_runs(std::istream& in, std::string path) {
    RunFile file{std::move(path), {}};
    RunReader reader(in);
    while (auto record = reader.next()) file.records.push_back(std::move(*record));
    return file;
}

RunFile parse_runs_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_runs(in);
}

std::string write_run_line(const RunRecord& r) {
    ordered_json obj;
    obj["run_id"] = r.run_id;
    obj["benchmark_id"] = r.benchmark_id;
    obj["system_name"] = r.system_name;
    obj["accelerator_count"] = r.accelerator_count;
    obj["precision_mode"] = to_string(r.precision_mode);
    obj["comm_compression"] = r.comm_compression;
    obj["sustained_flops"] = r.sustained_flops;
    obj["achieved_quality"] = r.achieved_quality;
    obj["epochs_run"] = r.epochs_run;
    obj["wall_clock_seconds"] = r.wall_clock_seconds;
    if (r.seed) obj["seed"] = *r.seed;
    return obj.dump();
}

void write_runs(std::ostream& out, std::span<const RunRecord> records) {
    for (const auto& r : records) out << write_run_line(r) << '\n';
}

std::string write_runs(std::span<const RunRecord> records) {
    std::ostringstream out;
    write_runs(out, records);
    return out.str();
}

// ---------------------------------------------------------------------------
// Profile dumps
// ---------------------------------------------------------------------------

namespace {

constexpr std::string_view kProfileHeader =
    "workload_id,achieved_occupancy,ipc_efficiency,gld_efficiency,gst_efficiency,"
    "dram_utilization,parameter_count,epochs_to_quality,flops_per_forward";

constexpr std::array<std::string_view, 9> kProfileColumns = {
    "workload_id",      "achieved_occupancy", "ipc_efficiency",    "gld_efficiency",   "gst_efficiency",
    "dram_utilization", "parameter_count",    "epochs_to_quality", "flops_per_forward"};

std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cells.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.emplace_back();
        } else {
            cells.back() += c;
        }
    }
    if (quoted) throw ParseError(line_no, "", "unterminated quoted cell");
    return cells;
}

double parse_number_cell(std::string_view cell, std::string_view column, std::size_t line_no) {
    auto value = parse_finite_double(cell);
    if (!value)
        throw ParseError(line_no, std::string(column),
                         "column " + std::string(column) + ": non-numeric value '" + std::string(cell) + "'");
    return *value;
}

void check_range(double value, double lo, double hi, std::string_view column, std::size_t line_no) {
    if (value < lo || value > hi)
        throw ParseError(line_no, std::string(column),
                         "column " + std::string(column) + ": value " + format_shortest(value) +
                             " outside range [" + format_shortest(lo) + ", " + format_shortest(hi) + "]");
}

double parse_ratio(std::string_view cell, std::string_view column, std::size_t line_no) {
    double value = 0.0;
    if (!cell.empty() && cell.back() == '%') {
        value = parse_number_cell(trim(cell.substr(0, cell.size() - 1)), column, line_no) / 100.0;
    } else {
        value = parse_number_cell(cell, column, line_no);
    }
    check_range(value, 0.0, 1.0, column, line_no);
    return value;
}

std::optional<double> parse_positive_optional(std::string_view cell, std::string_view column,
                                              std::size_t line_no) {
    if (cell.empty()) return std::nullopt;
    const double v = parse_number_cell(cell, column, line_no);
    if (!(v > 0.0))
        throw ParseError(line_no, std::string(column),
                         "column " + std::string(column) + ": value " + format_shortest(v) + " must be > 0");
    return v;
}

std::optional<std::uint64_t> parse_count_optional(std::string_view cell, std::string_view column,
                                                  std::size_t line_no) {
    if (cell.empty()) return std::nullopt;
    const double v = parse_number_cell(cell, column, line_no);
    // 2^53: every integer below is exactly representable.
    if (v < 0.0 || v != std::floor(v) || v > 9007199254740992.0)
        throw ParseError(line_no, std::string(column),
                         "column " + std::string(column) + ": expected non-negative integer, got '" +
                             std::string(cell) + "'");
    return static_cast<std::uint64_t>(v);
}

}  // namespace

std::string_view profile_header() { return kProfileHeader; }

ProfileDump parse_profiles(std::istream& in, std::string path) {
    ProfileDump dump{std::move(path), {}};
    std::map<std::string, std::size_t, std::less<>> seen;
    bool header_seen = false;
    std::size_t line_no = 0;
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || handle_comment(line, line_no, kProfilesFormatVersion)) continue;
        if (!header_seen) {
            if (line != kProfileHeader)
                throw ParseError(line_no, "header",
                                 "header mismatch: expected '" + std::string(kProfileHeader) + "'");
            header_seen = true;
            continue;
        }
        auto cells = split_csv_line(line, line_no);
        if (cells.size() != kProfileColumns.size())
            throw ParseError(line_no, "",
                             "expected " + std::to_string(kProfileColumns.size()) + " columns, got " +
                                 std::to_string(cells.size()));
        std::array<std::string_view, 9> c;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = trim(cells[i]);

        ProfileVector v;
        v.workload_id = std::string(c[0]);
        if (v.workload_id.empty()) throw ParseError(line_no, "workload_id", "empty workload_id");
        v.achieved_occupancy = parse_ratio(c[1], kProfileColumns[1], line_no);
        v.ipc_efficiency = parse_ratio(c[2], kProfileColumns[2], line_no);
        v.gld_efficiency = parse_ratio(c[3], kProfileColumns[3], line_no);
        v.gst_efficiency = parse_ratio(c[4], kProfileColumns[4], line_no);
        const double level = parse_number_cell(c[5], kProfileColumns[5], line_no);
        check_range(level, 0.0, 10.0, kProfileColumns[5], line_no);
        v.dram_utilization = level / 10.0;
        v.parameter_count = parse_count_optional(c[6], kProfileColumns[6], line_no);
        v.epochs_to_quality = parse_positive_optional(c[7], kProfileColumns[7], line_no);
        v.flops_per_forward = parse_positive_optional(c[8], kProfileColumns[8], line_no);

        auto [it, inserted] = seen.try_emplace(v.workload_id, line_no);
        if (!inserted) throw DuplicateIdError(v.workload_id, it->second, line_no);
        dump.vectors.push_back(std::move(v));
    }
    if (!header_seen) throw ParseError(line_no, "header", "missing header row");
    return dump;
}

ProfileDump parse_profiles_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_profiles(in);
}

// ---------------------------------------------------------------------------
// Registry overrides
// ---------------------------------------------------------------------------

std::vector<BenchmarkSpec> parse_benchmark_specs(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("benchmark spec file: ") + e.what());
    }
    if (!doc.is_array()) throw std::invalid_argument("benchmark spec file: expected a JSON array");

    static constexpr std::array<std::string_view, 9> kFields = {
        "id",          "problem_domain", "model_name",      "dataset_name",    "quality_metric",
        "higher_is_better", "target_quality", "required_epochs", "penalty_exponent"};

    std::vector<BenchmarkSpec> specs;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& obj = doc[i];
        const auto where = "benchmark spec #" + std::to_string(i) + ": ";
        if (!obj.is_object()) throw std::invalid_argument(where + "expected object");
        for (const auto& [key, value] : obj.items()) {
            bool known = false;
            for (auto f : kFields) known = known || f == key;
            if (!known) throw std::invalid_argument(where + "unknown field " + key);
        }
        try {
            BenchmarkSpec s;
            s.id = obj.at("id").get<std::string>();
            s.problem_domain = obj.value("problem_domain", "");
            s.model_name = obj.value("model_name", "");
            s.dataset_name = obj.value("dataset_name", "");
            s.quality_metric = QualityMetric::from_name(obj.at("quality_metric").get<std::string>(),
                                                        obj.value("higher_is_better", true));
            s.target_quality = obj.at("target_quality").get<double>();
            s.required_epochs = obj.at("required_epochs").get<int>();
            s.penalty_exponent = obj.at("penalty_exponent").get<int>();
            check_spec(s);
            specs.push_back(std::move(s));
        } catch (const json::exception& e) {
            throw std::invalid_argument(where + e.what());
        }
    }
    return specs;
}

}  // namespace hpcai500
