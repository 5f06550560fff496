// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0
//
// Workload characterization: per-column z-scores, k-means (k-means++ seeding,
// Lloyd iterations) and an exact t-SNE embedding into two dimensions.
//
// Conventions:
//   * standard deviations use the N-1 divisor;
//   * t-SNE perplexity is 2^H with H the base-2 entropy of a conditional
//     distribution; the reported KL divergence uses the natural log;
//   * every random draw comes from a std::mt19937_64 seeded with the caller's
//     seed, mapped to doubles without std:: distributions so results do not
//     depend on the standard library implementation.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hpcai500/core.hpp"

namespace hpcai500 {

// Row-major, one row per workload.
class FeatureMatrix {
public:
    FeatureMatrix() = default;

    // Throws std::invalid_argument if rows are ragged or ids/names mismatch.
    // Empty `workload_ids` are filled with "row<i>".
    static FeatureMatrix from_rows(std::vector<std::string> workload_ids,
                                   std::vector<std::string> feature_names,
                                   const std::vector<std::vector<double>>& rows,
                                   bool standardized = false);

    std::size_t rows() const noexcept { return workload_ids_.size(); }
    std::size_t cols() const noexcept { return feature_names_.size(); }
    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
    double& operator()(std::size_t r, std::size_t c) { return values_[r * cols() + c]; }
    std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols(), cols()}; }

    const std::vector<std::string>& workload_ids() const noexcept { return workload_ids_; }
    const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
    bool standardized() const noexcept { return standardized_; }

private:
    std::vector<std::string> workload_ids_;
    std::vector<std::string> feature_names_;
    std::vector<double> values_;
    bool standardized_ = false;

    friend FeatureMatrix standardize(const FeatureMatrix& matrix);
};

// Column z-scores with the sample standard deviation; constant columns become
// zeros. Throws std::invalid_argument for fewer than two rows or an already
// standardized matrix.
FeatureMatrix standardize(const FeatureMatrix& matrix);

struct KMeansOptions {
    int k = 3;
    std::uint64_t seed = 42;
    int max_iter = 300;
    double tol = 1e-6;  // stop once no centroid moves this far (Euclidean)
};

struct ClusterResult {
    std::vector<int> labels;  // one per row, in [0, k)
    std::vector<std::vector<double>> centroids;
    double inertia = 0.0;
    int k = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    bool converged = false;
    // Inertia after the seeding assignment and after every Lloyd step.
    std::vector<double> inertia_history;
};

// Labels are renumbered in order of first appearance, so equal partitions get
// equal label vectors. Throws std::invalid_argument when the matrix is empty or
// not standardized, or k is outside [1, rows].
ClusterResult kmeans(const FeatureMatrix& matrix, const KMeansOptions& options);

// Row-major n x n matrix of P(j | i) plus the fitted Gaussian precisions.
struct ConditionalAffinities {
    std::size_t n = 0;
    std::vector<double> p;
    std::vector<double> beta;                 // 1 / (2 sigma_i^2)
    std::vector<double> achieved_perplexity;  // 2^H(P_i)
};

std::vector<double> squared_distances(const FeatureMatrix& matrix);

// Bisection on each point's precision until the conditional perplexity
// matches `perplexity`. Points whose distances are all equal stay uniform.
ConditionalAffinities conditional_affinities(const FeatureMatrix& matrix, double perplexity);

// (P(j|i) + P(i|j)) / 2n, row-major n x n, zero diagonal.
std::vector<double> joint_affinities(const ConditionalAffinities& conditional);

struct TsneOptions {
    double perplexity = 4.0;
    std::uint64_t seed = 42;
    int iterations = 1000;
    double learning_rate = 200.0;
};

inline constexpr double kEarlyExaggeration = 12.0;
inline constexpr int kExaggerationIterations = 250;
inline constexpr double kInitialMomentum = 0.5;
inline constexpr double kFinalMomentum = 0.8;
inline constexpr int kMomentumSwitchIteration = 250;
inline constexpr double kInitialEmbeddingStddev = 1e-4;

struct Embedding2D {
    std::vector<std::array<double, 2>> coords;  // aligned with matrix rows
    double perplexity = 0.0;
    double final_kl = 0.0;
    std::uint64_t seed = 0;
    int iterations = 0;
};

// Exact (O(n^2)) t-SNE. Throws std::invalid_argument for fewer than 4 rows,
// a perplexity outside [1, rows - 1), non-finite input or an unstandardized
// matrix.
Embedding2D tsne(const FeatureMatrix& matrix, const TsneOptions& options);

// KL(P || Q) in nats for a joint P and 2-D coordinates.
double kl_divergence(std::span<const double> joint_p, std::span<const std::array<double, 2>> coords);

enum class FeatureMode { arch_dependent, arch_independent };

std::string_view to_string(FeatureMode mode);
std::optional<FeatureMode> parse_feature_mode(std::string_view text);

struct CharacterizeOptions {
    FeatureMode mode = FeatureMode::arch_dependent;
    int k = 3;
    std::uint64_t seed = 42;
    double perplexity = 4.0;
    int tsne_iterations = 1000;
};

struct Characterization {
    FeatureMode mode = FeatureMode::arch_dependent;
    FeatureMatrix features;  // standardized, rows sorted by workload_id
    ClusterResult clusters;
    // Absent when fewer than 4 workloads are usable (t-SNE needs 4).
    std::optional<Embedding2D> embedding;
    std::vector<std::string> dropped;
    std::vector<std::string> warnings;
    CharacterizeOptions options;
};

// Sorts vectors by workload_id before anything random happens, so input order
// never changes the result. In arch_independent mode vectors lacking any of
// parameter_count / epochs_to_quality / flops_per_forward are dropped. Throws
// std::invalid_argument if fewer than max(k, 2) vectors remain.
Characterization characterize(std::span<const ProfileVector> vectors, const CharacterizeOptions& options);

// workload_id,x,y,cluster (x and y empty when there is no embedding).
std::string write_embedding_csv(const Characterization& result);
std::string write_clusters_json(const Characterization& result);

}  // namespace hpcai500
