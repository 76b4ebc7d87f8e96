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

#include "glamg/clustering.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>
#include <utility>

#include "glamg/error.hpp"
#include "glamg/rng.hpp"

namespace glamg {

namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return s;
}

// Nearest centroid of each listed point, evaluated blockwise as
// |c|^2 - 2 x.c so the inner products run through a matrix product.
void nearest_for(PointsView points, std::span<const std::size_t> ids,
                 const ClusterState& state, std::span<std::size_t> out) {
  const auto d = static_cast<Eigen::Index>(points.d);
  const auto k = static_cast<Eigen::Index>(state.k);
  const Eigen::Map<const RowMatrix> c(state.centroids.data(), k, d);
  const Eigen::VectorXd c_norm = c.rowwise().squaredNorm();

  constexpr std::size_t block = 512;
  RowMatrix x;
  RowMatrix g;
  for (std::size_t start = 0; start < ids.size(); start += block) {
    const auto m = std::min(block, ids.size() - start);
    x.resize(static_cast<Eigen::Index>(m), d);
    for (std::size_t i = 0; i < m; ++i) {
      const auto p = points.row(ids[start + i]);
      for (Eigen::Index j = 0; j < d; ++j) {
        x(static_cast<Eigen::Index>(i), j) = p[static_cast<std::size_t>(j)];
      }
    }
    g.noalias() = x * c.transpose();
    for (std::size_t i = 0; i < m; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      Eigen::Index best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < k; ++j) {
        const double dist = c_norm[j] - 2.0 * g(ii, j);
        if (dist < best_d) {
          best_d = dist;
          best = j;
        }
      }
      out[start + i] = static_cast<std::size_t>(best);
    }
  }
}

}  // namespace

PointsView::PointsView(std::span<const double> values, std::size_t rows,
                       std::size_t dims)
    : data(values), n(rows), d(dims) {
  if (values.size() != rows * dims) {
    throw DimensionError("PointsView: data length does not match n x d");
  }
}

void ClusterConfig::validate(std::size_t n_samples) const {
  if (n_clusters < 1 || n_clusters > n_samples) {
    throw ConfigError("n_clusters must lie in [1, n_samples]");
  }
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (centroid_tol < 0.0) throw ConfigError("centroid_tol must be >= 0");
}

std::vector<std::size_t> ClusterAssignment::cluster_sizes() const {
  std::vector<std::size_t> sizes(n_clusters, 0);
  for (auto l : labels) ++sizes[l];
  return sizes;
}

ClusterState kmeanspp_init(PointsView points, std::size_t k,
                           std::uint64_t seed) {
  if (k < 1 || k > points.n) {
    throw ConfigError("kmeanspp_init: need 1 <= K <= n, got K=" +
                      std::to_string(k) + ", n=" + std::to_string(points.n));
  }
  ClusterState state;
  state.k = k;
  state.d = points.d;
  state.centroids.resize(k * points.d);
  state.counts.assign(k, 1);

  CounterRng rng(seed);
  std::vector<char> chosen(points.n, 0);
  std::vector<double> best(points.n, std::numeric_limits<double>::infinity());

  auto place = [&](std::size_t c, std::size_t idx) {
    chosen[idx] = 1;
    const auto p = points.row(idx);
    std::copy(p.begin(), p.end(), state.centroid(c).begin());
    for (std::size_t i = 0; i < points.n; ++i) {
      best[i] = chosen[i] ? 0.0
                          : std::min(best[i], squared_distance(points.row(i), p));
    }
  };

  place(0, rng.below(points.n));
  for (std::size_t c = 1; c < k; ++c) {
    const double total = std::accumulate(best.begin(), best.end(), 0.0);
    std::size_t pick = points.n;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < points.n; ++i) {
        if (chosen[i] || best[i] == 0.0) continue;
        acc += best[i];
        pick = i;
        if (target < acc) break;
      }
    }
    if (pick == points.n) {
      // Every remaining point coincides with a centroid: pick uniformly
      // among the unchosen ones so the seeds stay distinct.
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < points.n; ++i) {
        if (!chosen[i]) free.push_back(i);
      }
      pick = free[rng.below(free.size())];
    }
    place(c, pick);
  }
  return state;
}

void minibatch_step(ClusterState& state, std::size_t c,
                    std::span<const double> x) {
  state.counts[c] += 1;
  const double eta = 1.0 / static_cast<double>(state.counts[c]);
  auto centroid = state.centroid(c);
  for (std::size_t j = 0; j < centroid.size(); ++j) {
    centroid[j] = (1.0 - eta) * centroid[j] + eta * x[j];
  }
}

std::vector<std::size_t> nearest_centroids(PointsView points,
                                           const ClusterState& state) {
  std::vector<std::size_t> ids(points.n), out(points.n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  nearest_for(points, ids, state, out);
  return out;
}

ClusterResult minibatch_kmeans(PointsView points, const ClusterConfig& cfg) {
  cfg.validate(points.n);
  const auto n = points.n;
  const auto b = std::min(cfg.batch_size, n);
  const auto max_iters =
      cfg.max_iters.value_or(15 * ((n + cfg.batch_size - 1) / cfg.batch_size));

  ClusterResult result;
  result.state = kmeanspp_init(points, cfg.n_clusters, cfg.seed);
  auto& state = result.state;

  CounterRng rng = CounterRng(cfg.seed).split(1);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> cached(b);
  std::vector<double> before(state.centroids.size());

  for (std::size_t it = 0; it < max_iters; ++it) {
    // b samples without replacement: partial Fisher-Yates.
    for (std::size_t i = 0; i < b; ++i) {
      std::swap(perm[i], perm[i + rng.below(n - i)]);
    }
    const std::span<const std::size_t> batch(perm.data(), b);
    nearest_for(points, batch, state, cached);

    before = state.centroids;
    for (std::size_t i = 0; i < b; ++i) {
      minibatch_step(state, cached[i], points.row(batch[i]));
    }
    ++result.iterations;

    double moved = 0.0;
    for (std::size_t c = 0; c < state.k; ++c) {
      const std::span<const double> old(before.data() + c * state.d, state.d);
      moved = std::max(moved, squared_distance(old, state.centroid(c)));
    }
    if (std::sqrt(moved) < cfg.centroid_tol) break;
  }

  auto& assignment = result.assignment;
  assignment.n_clusters = state.k;
  assignment.labels = nearest_centroids(points, state);

  // Coincident centroids tie toward the lower index, so a repaired
  // centroid sitting on a duplicate point is pinned to that point; every
  // pin is still a nearest centroid (distance zero).
  std::vector<std::pair<std::size_t, std::size_t>> pinned;
  for (std::size_t round = 0; round < state.k; ++round) {
    const auto sizes = assignment.cluster_sizes();
    const auto empty = std::find(sizes.begin(), sizes.end(), 0u);
    if (empty == sizes.end()) break;
    const auto c = static_cast<std::size_t>(empty - sizes.begin());
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto l = assignment.labels[i];
      if (sizes[l] < 2) continue;
      const double dist = squared_distance(points.row(i), state.centroid(l));
      if (dist > far_d) {
        far_d = dist;
        far = i;
      }
    }
    const auto p = points.row(far);
    std::copy(p.begin(), p.end(), state.centroid(c).begin());
    ++result.repairs;
    assignment.labels = nearest_centroids(points, state);
    if (assignment.labels[far] != c) pinned.emplace_back(far, c);
    for (const auto& [i, cl] : pinned) assignment.labels[i] = cl;
  }
  return result;
}

double kmeans_objective(PointsView points, const ClusterState& state,
                        const ClusterAssignment& assignment) {
  if (assignment.labels.size() != points.n || state.d != points.d) {
    throw DimensionError("kmeans_objective: shapes do not match");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < points.n; ++i) {
    total += squared_distance(points.row(i),
                              state.centroid(assignment.labels[i]));
  }
  return total;
}

void write_assignment(std::ostream& out, const ClusterAssignment& assignment) {
  for (std::size_t i = 0; i < assignment.labels.size(); ++i) {
    out << i << ' ' << assignment.labels[i] << '\n';
  }
}

}  // namespace glamg
