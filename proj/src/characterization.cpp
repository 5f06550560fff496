// Copyright (c) 2026, The hpcai500 authors
// SPDX-License-Identifier: Apache-2.0

#include "hpcai500/characterization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hpcai500/numfmt.hpp"
#include "json.hpp"

namespace hpcai500 {

namespace {

// Uniform draws in [0, 1) with 53 random bits; identical on every platform.
class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::size_t index(std::size_t n) {
        return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
    }

    // Box-Muller; the second variate is cached.
    double normal() {
        if (spare_) {
            double s = *spare_;
            spare_.reset();
            return s;
        }
        double u1 = 0.0;
        do u1 = uniform();
        while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
    return d;
}

void require_finite(const FeatureMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (double v : m.row(r))
            if (!std::isfinite(v))
                throw std::invalid_argument("non-finite feature value in row " + m.workload_ids()[r]);
}

}  // namespace

FeatureMatrix FeatureMatrix::from_rows(std::vector<std::string> workload_ids,
                                       std::vector<std::string> feature_names,
                                       const std::vector<std::vector<double>>& rows, bool standardized) {
    if (workload_ids.empty())
        for (std::size_t i = 0; i < rows.size(); ++i) workload_ids.push_back("row" + std::to_string(i));
    if (workload_ids.size() != rows.size())
        throw std::invalid_argument("feature matrix: " + std::to_string(workload_ids.size()) + " ids for " +
                                    std::to_string(rows.size()) + " rows");
    FeatureMatrix m;
    m.workload_ids_ = std::move(workload_ids);
    m.feature_names_ = std::move(feature_names);
    m.standardized_ = standardized;
    m.values_.reserve(rows.size() * m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols())
            throw std::invalid_argument("feature matrix: row " + std::to_string(r) + " has " +
                                        std::to_string(rows[r].size()) + " values, expected " +
                                        std::to_string(m.cols()));
        m.values_.insert(m.values_.end(), rows[r].begin(), rows[r].end());
    }
    return m;
}

FeatureMatrix standardize(const FeatureMatrix& matrix) {
    if (matrix.standardized()) throw std::invalid_argument("matrix is already standardized");
    if (matrix.rows() < 2) throw std::invalid_argument("standardize needs at least 2 rows");
    FeatureMatrix out = matrix;
    const auto n = static_cast<double>(matrix.rows());
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
        double sum = 0.0;
        for (std::size_t r = 0; r < matrix.rows(); ++r) sum += matrix(r, c);
        const double mean = sum / n;
        bool constant = true;
        double ss = 0.0;
        for (std::size_t r = 0; r < matrix.rows(); ++r) {
            constant = constant && matrix(r, c) == matrix(0, c);
            ss += (matrix(r, c) - mean) * (matrix(r, c) - mean);
        }
        const double sd = std::sqrt(ss / (n - 1.0));
        for (std::size_t r = 0; r < matrix.rows(); ++r)
            out(r, c) = constant || sd == 0.0 ? 0.0 : (matrix(r, c) - mean) / sd;
    }
    out.standardized_ = true;
    return out;
}

// ---------------------------------------------------------------------------
// k-means
// ---------------------------------------------------------------------------

namespace {

// Assigns every row to its nearest centroid (ties -> lowest index); returns inertia.
double assign(const FeatureMatrix& m, const std::vector<std::vector<double>>& centroids,
              std::vector<int>& labels, std::vector<double>& dist) {
    double inertia = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        double best = std::numeric_limits<double>::infinity();
        int best_c = 0;
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            const double d = squared_distance(m.row(r), centroids[c]);
            if (d < best) {
                best = d;
                best_c = static_cast<int>(c);
            }
        }
        labels[r] = best_c;
        dist[r] = best;
        inertia += best;
    }
    return inertia;
}

std::vector<std::size_t> kmeanspp_seeds(const FeatureMatrix& m, int k, Random& rng) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> chosen;
    std::vector<bool> taken(n, false);
    std::vector<double> mindist(n, std::numeric_limits<double>::infinity());

    auto take = [&](std::size_t idx) {
        chosen.push_back(idx);
        taken[idx] = true;
        for (std::size_t r = 0; r < n; ++r)
            mindist[r] = std::min(mindist[r], squared_distance(m.row(r), m.row(idx)));
    };

    take(rng.index(n));
    while (static_cast<int>(chosen.size()) < k) {
        double total = 0.0;
        for (std::size_t r = 0; r < n; ++r) total += mindist[r];
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.uniform() * total;
            double cumulative = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                if (mindist[r] <= 0.0) continue;
                cumulative += mindist[r];
                pick = r;
                if (cumulative > target) break;
            }
        } else {
            // Every remaining row duplicates a seed.
            for (std::size_t r = 0; r < n && pick == n; ++r)
                if (!taken[r]) pick = r;
        }
        take(pick);
    }
    return chosen;
}

}  // namespace

ClusterResult kmeans(const FeatureMatrix& matrix, const KMeansOptions& options) {
    const std::size_t n = matrix.rows();
    if (n == 0 || matrix.cols() == 0) throw std::invalid_argument("kmeans: empty matrix");
    if (!matrix.standardized()) throw std::invalid_argument("kmeans: matrix must be standardized");
    if (options.k < 1 || static_cast<std::size_t>(options.k) > n)
        throw std::invalid_argument("kmeans: k=" + std::to_string(options.k) + " outside [1, " +
                                    std::to_string(n) + "]");
    if (options.max_iter < 0) throw std::invalid_argument("kmeans: max_iter must be >= 0");
    require_finite(matrix);

    const auto k = static_cast<std::size_t>(options.k);
    const std::size_t dims = matrix.cols();
    Random rng(options.seed);

    std::vector<std::vector<double>> centroids;
    for (auto idx : kmeanspp_seeds(matrix, options.k, rng))
        centroids.emplace_back(matrix.row(idx).begin(), matrix.row(idx).end());

    ClusterResult result;
    result.k = options.k;
    result.seed = options.seed;
    std::vector<int> labels(n, 0);
    std::vector<double> dist(n, 0.0);
    result.inertia_history.push_back(assign(matrix, centroids, labels, dist));

    for (int iter = 0; iter < options.max_iter; ++iter) {
        std::vector<std::vector<double>> next(k, std::vector<double>(dims, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t r = 0; r < n; ++r) {
            auto& c = next[static_cast<std::size_t>(labels[r])];
            for (std::size_t d = 0; d < dims; ++d) c[d] += matrix(r, d);
            ++counts[static_cast<std::size_t>(labels[r])];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) continue;
            for (auto& v : next[c]) v /= static_cast<double>(counts[c]);
        }
        // An empty cluster takes over the row farthest from its own centroid.
        std::vector<double> own(n);
        for (std::size_t r = 0; r < n; ++r)
            own[r] = squared_distance(matrix.row(r), next[static_cast<std::size_t>(labels[r])]);
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] != 0) continue;
            auto far = static_cast<std::size_t>(std::max_element(own.begin(), own.end()) - own.begin());
            if (own[far] > 0.0) {
                next[c].assign(matrix.row(far).begin(), matrix.row(far).end());
                own[far] = 0.0;
            } else {
                next[c] = centroids[c];
            }
        }

        double shift = 0.0;
        for (std::size_t c = 0; c < k; ++c) shift = std::max(shift, std::sqrt(squared_distance(next[c], centroids[c])));
        centroids = std::move(next);
        result.inertia_history.push_back(assign(matrix, centroids, labels, dist));
        result.iterations = iter + 1;
        if (shift < options.tol) {
            result.converged = true;
            break;
        }
    }

    // Renumber clusters by first appearance.
    std::vector<int> remap(k, -1);
    int next_label = 0;
    for (int l : labels)
        if (remap[static_cast<std::size_t>(l)] < 0) remap[static_cast<std::size_t>(l)] = next_label++;
    for (auto& r : remap)
        if (r < 0) r = next_label++;
    result.centroids.resize(k);
    for (std::size_t c = 0; c < k; ++c) result.centroids[static_cast<std::size_t>(remap[c])] = centroids[c];
    result.labels.resize(n);
    for (std::size_t r = 0; r < n; ++r) result.labels[r] = remap[static_cast<std::size_t>(labels[r])];
    result.inertia = result.inertia_history.back();
    return result;
}

// ---------------------------------------------------------------------------
// t-SNE
// ---------------------------------------------------------------------------

std::vector<double> squared_distances(const FeatureMatrix& matrix) {
    const std::size_t n = matrix.rows();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = squared_distance(matrix.row(i), matrix.row(j));
    return d;
}

ConditionalAffinities conditional_affinities(const FeatureMatrix& matrix, double perplexity) {
    const std::size_t n = matrix.rows();
    if (n < 2) throw std::invalid_argument("affinities need at least 2 rows");
    if (!(perplexity >= 1.0) || !(perplexity < static_cast<double>(n - 1)))
        throw std::invalid_argument("perplexity " + format_shortest(perplexity) + " infeasible for " +
                                    std::to_string(n) + " rows (need 1 <= perplexity < " +
                                    std::to_string(n - 1) + ")");
    require_finite(matrix);

    constexpr int kMaxSteps = 200;
    constexpr double kEntropyTol = 1e-12;
    const double target = std::log2(perplexity);
    const auto dist = squared_distances(matrix);

    ConditionalAffinities out;
    out.n = n;
    out.p.assign(n * n, 0.0);
    out.beta.assign(n, 1.0);
    out.achieved_perplexity.assign(n, 0.0);

    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) dmin = std::min(dmin, dist[i * n + j]);

        double beta = 1.0;
        double lo = 0.0;
        double hi = std::numeric_limits<double>::infinity();
        double entropy = 0.0;
        double evaluated = beta;
        for (int step = 0; step < kMaxSteps; ++step) {
            evaluated = beta;
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                row[j] = j == i ? 0.0 : std::exp(-beta * (dist[i * n + j] - dmin));
                sum += row[j];
            }
            entropy = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                row[j] /= sum;
                if (row[j] > 0.0) entropy -= row[j] * std::log2(row[j]);
            }
            const double diff = entropy - target;
            if (std::fabs(diff) < kEntropyTol) break;
            if (diff > 0.0) {
                lo = beta;
                beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (lo + hi);
            } else {
                hi = beta;
                beta = 0.5 * (lo + hi);
            }
        }
                std::copy(row.begin(), row.end(), out.p.begin() + static_cast<std::ptrdiff_t>(i * n));
        out.achieved_perplexity[i] = std::exp2(entropy);
        out.beta[i] = evaluated;
    }
    return out;
}

std::vector<double> joint_affinities(const ConditionalAffinities& conditional) {
    const std::size_t n = conditional.n;
    std::vector<double> joint(n * n, 0.0);
    const double denom = 2.0 * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) joint[i * n + j] = (conditional.p[i * n + j] + conditional.p[j * n + i]) / denom;
    return joint;
}

namespace {

// Student-t kernel 1 / (1 + |yi - yj|^2); returns the off-diagonal sum.
double student_kernel(std::span<const std::array<double, 2>> y, std::vector<double>& num) {
    const std::size_t n = y.size();
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num[i * n + i] = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = y[i][0] - y[j][0];
            const double dy = y[i][1] - y[j][1];
            const double q = 1.0 / (1.0 + dx * dx + dy * dy);
            num[i * n + j] = num[j * n + i] = q;
            z += 2.0 * q;
        }
    }
    return z;
}

}  // namespace

double kl_divergence(std::span<const double> joint_p, std::span<const std::array<double, 2>> coords) {
    const std::size_t n = coords.size();
    if (joint_p.size() != n * n) throw std::invalid_argument("kl_divergence: size mismatch");
    std::vector<double> num(n * n);
    const double z = student_kernel(coords, num);
    double kl = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double p = joint_p[i * n + j];
            if (i == j || p <= 0.0) continue;
            kl += p * std::log(p / (num[i * n + j] / z));
        }
    return std::max(0.0, kl);
}

Embedding2D tsne(const FeatureMatrix& matrix, const TsneOptions& options) {
    const std::size_t n = matrix.rows();
    if (n < 4) throw std::invalid_argument("t-SNE needs at least 4 rows, got " + std::to_string(n));
    if (!matrix.standardized()) throw std::invalid_argument("t-SNE: matrix must be standardized");
    if (options.iterations < 0) throw std::invalid_argument("t-SNE: iterations must be >= 0");
    if (!(options.learning_rate > 0.0)) throw std::invalid_argument("t-SNE: learning rate must be > 0");

    const auto p = joint_affinities(conditional_affinities(matrix, options.perplexity));

    Random rng(options.seed);
    std::vector<std::array<double, 2>> y(n);
    for (auto& pt : y) {
        pt[0] = kInitialEmbeddingStddev * rng.normal();
        pt[1] = kInitialEmbeddingStddev * rng.normal();
    }
    std::vector<std::array<double, 2>> update(n, {0.0, 0.0});
    std::vector<std::array<double, 2>> gains(n, {1.0, 1.0});
    std::vector<std::array<double, 2>> grad(n);
    std::vector<double> num(n * n);

    for (int it = 0; it < options.iterations; ++it) {
        const double exaggeration = it < kExaggerationIterations ? kEarlyExaggeration : 1.0;
        const double momentum = it < kMomentumSwitchIteration ? kInitialMomentum : kFinalMomentum;
        const double z = student_kernel(y, num);

        for (std::size_t i = 0; i < n; ++i) {
            grad[i] = {0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double q = num[i * n + j];
                const double w = (exaggeration * p[i * n + j] - q / z) * q;
                grad[i][0] += 4.0 * w * (y[i][0] - y[j][0]);
                grad[i][1] += 4.0 * w * (y[i][1] - y[j][1]);
            }
        }

        std::array<double, 2> mean{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < 2; ++d) {
                const bool same_sign = (grad[i][d] > 0.0) == (update[i][d] > 0.0);
                gains[i][d] = same_sign ? gains[i][d] * 0.8 : gains[i][d] + 0.2;
                gains[i][d] = std::max(gains[i][d], 0.01);
                update[i][d] = momentum * update[i][d] - options.learning_rate * gains[i][d] * grad[i][d];
                y[i][d] += update[i][d];
                mean[d] += y[i][d];
            }
        }
        for (auto& pt : y) {
            pt[0] -= mean[0] / static_cast<double>(n);
            pt[1] -= mean[1] / static_cast<double>(n);
        }
    }

    for (const auto& pt : y)
        if (!std::isfinite(pt[0]) || !std::isfinite(pt[1]))
            throw std::runtime_error("t-SNE diverged (non-finite coordinates)");

    Embedding2D e;
    e.final_kl = kl_divergence(p, y);
    e.coords = std::move(y);
    e.perplexity = options.perplexity;
    e.seed = options.seed;
    e.iterations = options.iterations;
    return e;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

std::string_view to_string(FeatureMode mode) {
    return mode == FeatureMode::arch_dependent ? "arch_dependent" : "arch_independent";
}

std::optional<FeatureMode> parse_feature_mode(std::string_view text) {
    if (text == "arch_dependent") return FeatureMode::arch_dependent;
    if (text == "arch_independent") return FeatureMode::arch_independent;
    return std::nullopt;
}

Characterization characterize(std::span<const ProfileVector> vectors, const CharacterizeOptions& options) {
    std::vector<const ProfileVector*> sorted;
    for (const auto& v : vectors) sorted.push_back(&v);
    std::sort(sorted.begin(), sorted.end(),
              [](const ProfileVector* a, const ProfileVector* b) { return a->workload_id < b->workload_id; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i]->workload_id == sorted[i - 1]->workload_id)
            throw std::invalid_argument("duplicate workload_id " + sorted[i]->workload_id);

    Characterization out;
    out.mode = options.mode;
    out.options = options;

    std::vector<std::string> ids;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> names;
    if (options.mode == FeatureMode::arch_dependent) {
        names = {"achieved_occupancy", "ipc_efficiency", "gld_efficiency", "gst_efficiency", "dram_utilization"};
        for (const auto* v : sorted) {
            ids.push_back(v->workload_id);
            rows.push_back({v->achieved_occupancy, v->ipc_efficiency, v->gld_efficiency, v->gst_efficiency,
                            v->dram_utilization});
        }
    } else {
        names = {"parameter_count", "epochs_to_quality", "flops_per_forward"};
        for (const auto* v : sorted) {
            if (!v->has_independent_features()) {
                std::string missing;
                auto note = [&](bool present, const char* name) {
                    if (present) return;
                    missing += missing.empty() ? "" : ", ";
                    missing += name;
                };
                note(v->parameter_count.has_value(), "parameter_count");
                note(v->epochs_to_quality.has_value(), "epochs_to_quality");
                note(v->flops_per_forward.has_value(), "flops_per_forward");
                out.dropped.push_back(v->workload_id);
                out.warnings.push_back("workload " + v->workload_id + " dropped: missing " + missing);
                continue;
            }
            ids.push_back(v->workload_id);
            rows.push_back({static_cast<double>(*v->parameter_count), *v->epochs_to_quality, *v->flops_per_forward});
        }
    }

    const std::size_t needed = static_cast<std::size_t>(std::max(options.k, 2));
    if (rows.size() < needed)
        throw std::invalid_argument("characterize: " + std::to_string(rows.size()) +
                                    " usable workloads, need at least " + std::to_string(needed));

    out.features = standardize(FeatureMatrix::from_rows(std::move(ids), std::move(names), rows));
    out.clusters = kmeans(out.features, {options.k, options.seed, 300, 1e-6});
    if (out.features.rows() >= 4) {
        out.embedding = tsne(out.features, {options.perplexity, options.seed, options.tsne_iterations, 200.0});
    } else {
        out.warnings.push_back("t-SNE skipped: " + std::to_string(out.features.rows()) +
                               " workloads (needs at least 4)");
    }
    return out;
}

std::string write_embedding_csv(const Characterization& result) {
    std::string out = "workload_id,x,y,cluster\n";
    const auto& ids = result.features.workload_ids();
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out += csv_field(ids[i]);
        out += ',';
        if (result.embedding) {
            out += format_shortest(result.embedding->coords[i][0]) + ',' +
                   format_shortest(result.embedding->coords[i][1]);
        } else {
            out += ',';
        }
        out += ',' + std::to_string(result.clusters.labels[i]) + '\n';
    }
    return out;
}

std::string write_clusters_json(const Characterization& result) {
    nlohmann::ordered_json doc;
    doc["format_version"] = 1;
    doc["mode"] = to_string(result.mode);
    doc["k"] = result.clusters.k;
    doc["seed"] = result.clusters.seed;
    doc["standardized"] = result.features.standardized();
    doc["feature_names"] = result.features.feature_names();
    doc["workloads"] = result.features.workload_ids();
    doc["labels"] = result.clusters.labels;
    doc["centroids"] = result.clusters.centroids;
    doc["inertia"] = result.clusters.inertia;
    doc["iterations"] = result.clusters.iterations;
    doc["converged"] = result.clusters.converged;
    doc["dropped"] = result.dropped;
    if (result.embedding) {
        doc["embedding"] = {{"perplexity", result.embedding->perplexity},
                            {"perplexity_entropy_base", 2},
                            {"final_kl", result.embedding->final_kl},
                            {"kl_log_base", "e"},
                            {"iterations", result.embedding->iterations},
                            {"seed", result.embedding->seed}};
    } else {
        doc["embedding"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

}  // namespace hpcai500
