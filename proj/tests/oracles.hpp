// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference values and brute-force checkers. Nothing here calls into
// the library's algorithm implementations.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Evaluated with mpmath at 50 significant digits, frozen here:
//   (0.755 / 0.763)^5  and  (0.30 / 0.35)^10
inline constexpr double kPenaltyIcShortfall = 0.94866323138324534791;
inline constexpr double kPenaltyEwaShortfall = 0.21405831560130778042;
// sqrt(2) / 61: sample coefficient of variation of {60, 62}.
inline constexpr double kVariation60And62 = 0.023183828891362213915;

// Adjusted Rand index between two labelings of the same rows.
inline double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
    std::map<std::pair<int, int>, double> table;
    std::map<int, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        table[{a[i], b[i]}] += 1;
        rows[a[i]] += 1;
        cols[b[i]] += 1;
    }
    auto c2 = [](double x) { return x * (x - 1) / 2; };
    double index = 0, sum_rows = 0, sum_cols = 0;
    for (auto& [k, v] : table) index += c2(v);
    for (auto& [k, v] : rows) sum_rows += c2(v);
    for (auto& [k, v] : cols) sum_cols += c2(v);
    const double expected = sum_rows * sum_cols / c2(static_cast<double>(a.size()));
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

// Sum of squared distances to each cluster's mean.
inline double partition_inertia(const std::vector<std::vector<double>>& pts, std::span<const int> labels, int k) {
    const std::size_t dims = pts.front().size();
    std::vector<std::vector<double>> mean(static_cast<std::size_t>(k), std::vector<double>(dims, 0.0));
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ++count[static_cast<std::size_t>(labels[i])];
        for (std::size_t d = 0; d < dims; ++d) mean[static_cast<std::size_t>(labels[i])][d] += pts[i][d];
    }
    for (std::size_t c = 0; c < mean.size(); ++c)
        for (auto& v : mean[c]) v /= count[c] > 0 ? count[c] : 1;
    double total = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t d = 0; d < dims; ++d) {
            const double diff = pts[i][d] - mean[static_cast<std::size_t>(labels[i])][d];
            total += diff * diff;
        }
    return total;
}

struct Partition {
    std::vector<int> labels;
    double inertia = std::numeric_limits<double>::infinity();
};

// Enumerates all k^n assignments with every cluster non-empty.
inline Partition best_partition(const std::vector<std::vector<double>>& pts, int k) {
    const std::size_t n = pts.size();
    std::vector<int> labels(n, 0);
    Partition best;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= static_cast<std::uint64_t>(k);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        std::vector<bool> used(static_cast<std::size_t>(k), false);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = static_cast<int>(c % static_cast<std::uint64_t>(k));
            used[static_cast<std::size_t>(labels[i])] = true;
            c /= static_cast<std::uint64_t>(k);
        }
        bool all = true;
        for (bool u : used) all = all && u;
        if (!all) continue;
        const double inertia = partition_inertia(pts, labels, k);
        if (inertia < best.inertia) best = {labels, inertia};
    }
    return best;
}

// Three blobs of three points in `dims` dimensions: centers >= 10 apart,
// members within 0.1 of their center. Returns points and the blob of each.
inline std::pair<std::vector<std::vector<double>>, std::vector<int>> three_blobs(std::uint64_t seed,
                                                                                 std::size_t dims = 5) {
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<std::vector<double>> pts;
    std::vector<int> blob;
    for (int b = 0; b < 3; ++b) {
        for (int m = 0; m < 3; ++m) {
            std::vector<double> p(dims, 0.0);
            p[static_cast<std::size_t>(b) % dims] = 20.0;  // centers 20*sqrt(2) apart
            for (auto& v : p) v += (uniform() - 0.5) * 0.08;
            pts.push_back(p);
            blob.push_back(b);
        }
    }
    return {pts, blob};
}

}  // namespace oracle
