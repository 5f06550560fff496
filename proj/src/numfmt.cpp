// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include "hpcai500/numfmt.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace hpcai500 {

std::string format_shortest(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

namespace {

// Decimal exponent of `value` after rounding to `digits` significant digits.
int rounded_exponent(double value, int digits) {
    if (value == 0.0) return 0;
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*e", digits - 1, value);
    const char* e = std::strchr(buf.data(), 'e');
    return std::atoi(e + 1);
}

}  // namespace

std::string format_significant(double value, int digits) {
    const int exponent = rounded_exponent(value, digits);
    const int decimals = std::max(0, digits - 1 - exponent);
    std::array<char, 128> buf{};
    std::snprintf(buf.data(), buf.size(), "%.*f", decimals, value);
    return buf.data();
}

SiQuantity format_flops_si(double flops) {
    static constexpr std::array<const char*, 7> kUnits = {
        "FLOPS", "KFLOPS", "MFLOPS", "GFLOPS", "TFLOPS", "PFLOPS", "EFLOPS"};
    std::size_t unit = 0;
    double scaled = flops;
    while (unit + 1 < kUnits.size() && rounded_exponent(std::fabs(scaled), 4) >= 3) {
        scaled /= 1000.0;
        ++unit;
    }
    return {format_significant(scaled, 4), kUnits[unit]};
}

std::optional<double> parse_finite_double(std::string_view text) {
    if (text.empty()) return std::nullopt;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+') ++first;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace hpcai500
