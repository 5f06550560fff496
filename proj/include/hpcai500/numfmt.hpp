// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// Locale-independent number formatting and parsing.

#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace hpcai500 {

// Shortest decimal string that parses back to the same double.
std::string format_shortest(double value);

// Fixed-point text rounded to `digits` significant digits ("939.0", "31.41").
std::string format_significant(double value, int digits);

struct SiQuantity {
    std::string number;  // 4 significant digits
    std::string unit;    // "TFLOPS", "PFLOPS", ...
};

// Picks the SI prefix that leaves 1 <= mantissa < 1000 after rounding.
SiQuantity format_flops_si(double flops);

// Whole-string parse; rejects NaN, infinities, thousands separators and
// trailing garbage.
std::optional<double> parse_finite_double(std::string_view text);

// RFC 4180 quoting: wraps in double quotes when the text holds a comma,
// quote or line break, doubling embedded quotes.
std::string csv_field(std::string_view text);

}  // namespace hpcai500
