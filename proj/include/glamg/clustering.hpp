/*
 * Copyright 2026 The glamg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GLAMG_CLUSTERING_HPP
#define GLAMG_CLUSTERING_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace glamg {

/// Non-owning row-major n x d point matrix.
struct PointsView {
  std::span<const double> data;
  std::size_t n = 0;
  std::size_t d = 0;

  PointsView() = default;
  PointsView(std::span<const double> values, std::size_t rows,
             std::size_t dims);

  std::span<const double> row(std::size_t i) const {
    return data.subspan(i * d, d);
  }
};

struct ClusterConfig {
  std::size_t n_clusters = 1;
  std::size_t batch_size = 1;
  /// Empty means 15 * ceil(n / batch_size).
  std::optional<std::size_t> max_iters;
  double centroid_tol = 1e-4;
  std::uint64_t seed = 0;

  void validate(std::size_t n_samples) const;
};

/// Centroids (K x d, row-major) and per-centroid update counts.
struct ClusterState {
  std::size_t k = 0;
  std::size_t d = 0;
  std::vector<double> centroids;
  std::vector<std::size_t> counts;

  std::span<double> centroid(std::size_t c) {
    return {centroids.data() + c * d, d};
  }
  std::span<const double> centroid(std::size_t c) const {
    return {centroids.data() + c * d, d};
  }
};

struct ClusterAssignment {
  std::vector<std::size_t> labels;
  std::size_t n_clusters = 0;

  std::vector<std::size_t> cluster_sizes() const;
};

struct ClusterResult {
  ClusterState state;
  ClusterAssignment assignment;
  std::size_t iterations = 0;  // mini-batch iterations executed
  std::size_t repairs = 0;     // empty clusters re-seeded
};

/// K-Means++ seeding. Centroid counts start at 1 (the seeding point).
ClusterState kmeanspp_init(PointsView points, std::size_t k, std::uint64_t seed);

/// One mini-batch gradient step: v[c] += 1, eta = 1 / v[c],
/// c <- (1 - eta) c + eta x.
void minibatch_step(ClusterState& state, std::size_t c,
                    std::span<const double> x);

/// Nearest centroid (squared Euclidean) for every point; ties go to the
/// lowest centroid index.
std::vector<std::size_t> nearest_centroids(PointsView points,
                                           const ClusterState& state);

/// Mini-batch K-Means with K-Means++ seeding, early exit once a whole
/// iteration moves no centroid more than `centroid_tol`, and empty-cluster
/// repair on the final assignment.
ClusterResult minibatch_kmeans(PointsView points, const ClusterConfig& cfg);

/// Sum of squared distances from each point to its assigned centroid.
double kmeans_objective(PointsView points, const ClusterState& state,
                        const ClusterAssignment& assignment);

/// One "node cluster" pair per line.
void write_assignment(std::ostream& out, const ClusterAssignment& assignment);

}  // namespace glamg

#endif  // GLAMG_CLUSTERING_HPP
