// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include "hpcai500/report.hpp"

#include <algorithm>
#include <stdexcept>

#include "hpcai500/numfmt.hpp"
#include "json.hpp"

namespace hpcai500 {

namespace {

bool ranks_before(const RankingEntry& a, const RankingEntry& b) {
    if (a.vflops != b.vflops) return a.vflops > b.vflops;
    const auto& ta = a.time_to_quality_seconds;
    const auto& tb = b.time_to_quality_seconds;
    if (ta.has_value() != tb.has_value()) return ta.has_value();
    if (ta && *ta != *tb) return *ta < *tb;
    if (a.system_name != b.system_name) return a.system_name < b.system_name;
    return a.run_id < b.run_id;
}

std::string ttq_text(const std::optional<double>& ttq) {
    return ttq ? format_significant(*ttq, 4) + " s" : "unreached";
}

std::string markdown_cell(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '|') out += '\\';
        out += c == '\n' ? ' ' : c;
    }
    return out;
}

}  // namespace

std::vector<RankingEntry> rank(std::span<const ScoredRun> scored, const RankOptions& options) {
    std::vector<RankingEntry> entries;
    for (const auto& s : scored) {
        if (s.run.run_id != s.score.run_id)
            throw std::invalid_argument("score for run " + s.score.run_id + " joined with run " + s.run.run_id);
        if (s.run.benchmark_id != scored.front().run.benchmark_id)
            throw std::invalid_argument("cannot rank mixed benchmarks: " + scored.front().run.benchmark_id +
                                        " and " + s.run.benchmark_id);
        if (!s.score.valid && !options.include_invalid) continue;
        RankingEntry e;
        e.system_name = s.run.system_name;
        e.benchmark_id = s.run.benchmark_id;
        e.run_id = s.run.run_id;
        e.vflops = s.score.vflops;
        e.penalty_coefficient = s.score.penalty_coefficient;
        e.time_to_quality_seconds = s.score.time_to_quality_seconds;
        e.scale = s.run.accelerator_count;
        e.precision_mode = s.run.precision_mode;
        e.valid = s.score.valid;
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), ranks_before);
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].rank = static_cast<int>(i + 1);
    return entries;
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
    if (text == "json") return OutputFormat::json;
    if (text == "csv") return OutputFormat::csv;
    if (text == "markdown" || text == "md") return OutputFormat::markdown;
    return std::nullopt;
}

std::string emit(std::span<const RankingEntry> entries, OutputFormat format) {
    std::string out;
    switch (format) {
        case OutputFormat::json: {
            auto doc = nlohmann::ordered_json::array();
            for (const auto& e : entries) {
                nlohmann::ordered_json obj;
                obj["rank"] = e.rank;
                obj["system_name"] = e.system_name;
                obj["benchmark_id"] = e.benchmark_id;
                obj["run_id"] = e.run_id;
                obj["vflops"] = e.vflops;
                obj["penalty_coefficient"] = e.penalty_coefficient;
                if (e.time_to_quality_seconds) obj["time_to_quality_seconds"] = *e.time_to_quality_seconds;
                else obj["time_to_quality_seconds"] = nullptr;
                obj["scale"] = e.scale;
                obj["precision_mode"] = to_string(e.precision_mode);
                obj["valid"] = e.valid;
                doc.push_back(std::move(obj));
            }
            out = doc.dump(2) + "\n";
            break;
        }
        case OutputFormat::csv: {
            out = "rank,system,vflops,unit,penalty,ttq_seconds,scale,precision,valid\n";
            for (const auto& e : entries) {
                const auto si = format_flops_si(e.vflops);
                out += std::to_string(e.rank) + ',' + csv_field(e.system_name) + ',' + si.number + ',' + si.unit +
                       ',' + format_significant(e.penalty_coefficient, 4) + ',' +
                       (e.time_to_quality_seconds ? format_shortest(*e.time_to_quality_seconds) : "unreached") +
                       ',' + std::to_string(e.scale) + ',' + std::string(to_string(e.precision_mode)) + ',' +
                       (e.valid ? "true" : "false") + '\n';
            }
            break;
        }
        case OutputFormat::markdown: {
            out = "| Rank | System | VFLOPS | Penalty | TTQ | Scale | Precision |\n"
                  "|---:|---|---:|---:|---:|---:|---|\n";
            for (const auto& e : entries) {
                const auto si = format_flops_si(e.vflops);
                std::string penalty = format_significant(e.penalty_coefficient, 4);
                if (e.penalty_coefficient > 1.0) penalty += " (award)";
                std::string system = markdown_cell(e.system_name);
                if (!e.valid) system += " (invalid)";
                out += "| " + std::to_string(e.rank) + " | " + system + " | " + si.number + ' ' + si.unit + " | " +
                       penalty + " | " + ttq_text(e.time_to_quality_seconds) + " | " + std::to_string(e.scale) +
                       " | " + std::string(to_string(e.precision_mode)) + " |\n";
            }
            break;
        }
    }
    return out;
}

std::vector<RankingEntry> parse_ranking_json(std::string_view text) {
    std::vector<RankingEntry> entries;
    try {
        const auto doc = nlohmann::json::parse(text);
        if (!doc.is_array()) throw std::invalid_argument("ranking json: expected array");
        for (const auto& obj : doc) {
            RankingEntry e;
            e.rank = obj.at("rank").get<int>();
            e.system_name = obj.at("system_name").get<std::string>();
            e.benchmark_id = obj.at("benchmark_id").get<std::string>();
            e.run_id = obj.at("run_id").get<std::string>();
            e.vflops = obj.at("vflops").get<double>();
            e.penalty_coefficient = obj.at("penalty_coefficient").get<double>();
            if (const auto& t = obj.at("time_to_quality_seconds"); !t.is_null()) e.time_to_quality_seconds = t.get<double>();
            e.scale = obj.at("scale").get<std::int64_t>();
            auto mode = parse_precision_mode(obj.at("precision_mode").get<std::string>());
            if (!mode) throw std::invalid_argument("ranking json: bad precision_mode");
            e.precision_mode = *mode;
            e.valid = obj.at("valid").get<bool>();
            entries.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw std::invalid_argument(std::string("ranking json: ") + ex.what());
    }
    return entries;
}

}  // namespace hpcai500
