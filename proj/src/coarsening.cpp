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

#include "glamg/coarsening.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "glamg/error.hpp"
#include "glamg/rng.hpp"

namespace glamg {

std::string_view to_string(CoarsenerKind kind) {
  switch (kind) {
    case CoarsenerKind::GLCoarsener: return "gl";
    case CoarsenerKind::VanekAggregation: return "vanek";
    case CoarsenerKind::Beck: return "beck";
  }
  return "?";
}

CoarsenerKind parse_coarsener_kind(std::string_view name) {
  if (name == "gl" || name == "gl-coarsener") return CoarsenerKind::GLCoarsener;
  if (name == "vanek") return CoarsenerKind::VanekAggregation;
  if (name == "beck") return CoarsenerKind::Beck;
  throw ConfigError("unknown coarsening method '" + std::string(name) + "'");
}

void CoarsenerChoice::validate() const {
  if (!(gl.cluster_ratio > 1.0)) throw ConfigError("cluster_ratio must be > 1");
  if (!(gl.batch_ratio >= 1.0)) throw ConfigError("batch_ratio must be >= 1");
  if (!(vanek_epsilon >= 0.0)) throw ConfigError("vanek_epsilon must be >= 0");
  gl.walk.validate();
  gl.embedding.validate();
  if (prolongation_smoothing) prolongation_smoothing->validate();
}

void AggregateSet::validate() const {
  if (assignment.labels.size() != n_fine) {
    throw DimensionError("aggregate labels do not cover every fine node");
  }
  std::vector<std::size_t> size(n_coarse, 0);
  for (auto l : assignment.labels) {
    if (l >= n_coarse) throw DimensionError("aggregate label out of range");
    ++size[l];
  }
  const auto empty = std::find(size.begin(), size.end(), 0u);
  if (empty != size.end()) {
    throw DimensionError("aggregate " +
                         std::to_string(empty - size.begin()) + " is empty");
  }
}

CsrMatrix prolongation_from_aggregates(const AggregateSet& agg) {
  agg.validate();
  std::vector<std::size_t> ptr(agg.n_fine + 1);
  std::iota(ptr.begin(), ptr.end(), std::size_t{0});
  return {agg.n_fine, agg.n_coarse, std::move(ptr), agg.assignment.labels,
          DenseVector(agg.n_fine, 1.0)};
}

CsrMatrix smooth_prolongation(const CsrMatrix& a, const CsrMatrix& p_hat,
                              const SmootherConfig& cfg) {
  if (!a.square() || a.rows() != p_hat.rows()) {
    throw DimensionError("smooth_prolongation: shapes do not match");
  }
  cfg.validate();
  const auto inv_d = inverse_diagonal(a);
  const auto ap = spgemm(a, p_hat);

  if (cfg.kind == SmootherKind::Jacobi ||
      cfg.kind == SmootherKind::DampedJacobi) {
    const double w = cfg.kind == SmootherKind::Jacobi ? 1.0 : cfg.omega;
    auto scaled = spgemm(CsrMatrix::from_diagonal(inv_d), ap);
    return add(1.0, p_hat, -w, scaled);
  }

  // Forward substitution (D + w L) Y = A P, row by row, then P - w Y.
  const double w = cfg.kind == SmootherKind::GaussSeidel ? 1.0 : cfg.omega;
  const auto n = a.rows();
  const auto nc = p_hat.cols();
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> marker(nc, unset), cols;
  DenseVector acc(nc, 0.0);
  std::vector<std::size_t> ptr(n + 1, 0), idx;
  DenseVector val;

  for (std::size_t i = 0; i < n; ++i) {
    cols.clear();
    auto touch = [&](std::size_t j, double v) {
      if (marker[j] != i) {
        marker[j] = i;
        acc[j] = 0.0;
        cols.push_back(j);
      }
      acc[j] += v;
    };
    const auto rb = ap.row(i);
    for (std::size_t k = 0; k < rb.size(); ++k) touch(rb.cols[k], rb.values[k]);
    const auto ra = a.row(i);
    for (std::size_t k = 0; k < ra.size() && ra.cols[k] < i; ++k) {
      const auto j = ra.cols[k];
      const double coef = -w * ra.values[k];
      for (auto q = ptr[j]; q < ptr[j + 1]; ++q) touch(idx[q], coef * val[q]);
    }
    std::sort(cols.begin(), cols.end());
    for (auto j : cols) {
      idx.push_back(j);
      val.push_back(acc[j] * inv_d[i]);
    }
    ptr[i + 1] = idx.size();
  }
  const CsrMatrix y(n, nc, std::move(ptr), std::move(idx), std::move(val));
  return add(1.0, p_hat, -w, y);
}

AggregateSet gl_aggregates(const CsrMatrix& a, const GlSettings& gl,
                           std::size_t level) {
  if (!a.square()) throw DimensionError("gl_coarsen: matrix is not square");
  const auto n = a.rows();
  if (n < 1) throw DimensionError("gl_coarsen: empty matrix");

  const auto graph = graph_from_matrix(a);

  WalkConfig walk = gl.walk;
  walk.seed = CounterRng(gl.walk.seed).split(level)();
  EmbeddingConfig emb_cfg = gl.embedding;
  emb_cfg.seed = CounterRng(gl.embedding.seed).split(level)();
  ClusterConfig cl = gl.cluster;
  cl.seed = CounterRng(gl.cluster.seed).split(level)();
  cl.n_clusters = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(static_cast<double>(n) /
                                             gl.cluster_ratio)));
  cl.batch_size = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::floor(static_cast<double>(n) /
                                             gl.batch_ratio)));

  AggregateSet agg;
  agg.n_fine = n;
  agg.n_coarse = cl.n_clusters;
  if (cl.n_clusters == 1) {
    agg.assignment = {std::vector<std::size_t>(n, 0), 1};
    return agg;
  }
  const auto corpus = generate_walks(graph, walk);
  const auto emb = train_embedding(corpus, n, emb_cfg);
  const auto clusters =
      minibatch_kmeans(PointsView(emb.in_matrix(), n, emb.dimension()), cl);
  agg.assignment = clusters.assignment;
  return agg;
}

CsrMatrix gl_coarsen(const CsrMatrix& a, const CoarsenerChoice& choice,
                     std::size_t level) {
  auto p = prolongation_from_aggregates(gl_aggregates(a, choice.gl, level));
  if (choice.prolongation_smoothing) {
    p = smooth_prolongation(a, p, *choice.prolongation_smoothing);
  }
  return p;
}

std::vector<std::vector<std::size_t>> strong_neighborhoods(const CsrMatrix& a,
                                                           double epsilon) {
  if (!a.square()) throw DimensionError("vanek: matrix is not square");
  const auto diag = a.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] == 0.0) {
      throw SolverError("vanek: zero diagonal entry in row " +
                        std::to_string(i));
    }
  }
  std::vector<std::vector<std::size_t>> strong(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const auto j = r.cols[k];
      if (j == i || r.values[k] == 0.0) continue;
      if (std::abs(r.values[k]) >=
          epsilon * std::sqrt(std::abs(diag[i] * diag[j]))) {
        strong[i].push_back(j);
      }
    }
  }
  return strong;
}

AggregateSet vanek_aggregates(const CsrMatrix& a, double epsilon) {
  const auto strong = strong_neighborhoods(a, epsilon);
  const auto n = a.rows();
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(n, none);
  std::size_t next = 0;

  // Pass 1: whole untouched neighborhoods become aggregates.
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != none || strong[i].empty()) continue;
    const bool untouched = std::all_of(
        strong[i].begin(), strong[i].end(),
        [&](std::size_t j) { return label[j] == none; });
    if (!untouched) continue;
    label[i] = next;
    for (auto j : strong[i]) label[j] = next;
    ++next;
  }

  // Pass 2: join the pass-1 aggregate of the strongest coupled neighbor.
  const auto pass1 = label;
  for (std::size_t i = 0; i < n; ++i) {
    if (pass1[i] != none) continue;
    double best = -1.0;
    for (auto j : strong[i]) {
      if (pass1[j] == none) continue;
      const double w = std::abs(a.at(i, j));
      if (w > best) {
        best = w;
        label[i] = pass1[j];
      }
    }
  }

  // Pass 3: singletons.
  for (auto& l : label) {
    if (l == none) l = next++;
  }

  AggregateSet agg;
  agg.n_fine = n;
  agg.n_coarse = next;
  agg.assignment = {std::move(label), next};
  return agg;
}

CsrMatrix vanek_coarsen(const CsrMatrix& a, double epsilon) {
  return prolongation_from_aggregates(vanek_aggregates(a, epsilon));
}

CsrMatrix beck_coarsen(const CsrMatrix& a) {
  const auto g = graph_from_matrix(a);
  const auto n = g.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) {
    return g.degree(x) > g.degree(y);
  });

  enum class Mark : char { Undecided, Coarse, Fine };
  std::vector<Mark> mark(n, Mark::Undecided);
  for (auto u : order) {
    if (mark[u] != Mark::Undecided) continue;
    mark[u] = Mark::Coarse;
    for (const auto& e : g.neighbors(u)) {
      if (mark[e.node] == Mark::Undecided) mark[e.node] = Mark::Fine;
    }
  }

  // Fine nodes without a coarse neighbor are promoted.
  for (std::size_t u = 0; u < n; ++u) {
    if (mark[u] != Mark::Fine) continue;
    const auto nb = g.neighbors(u);
    const bool has_coarse = std::any_of(nb.begin(), nb.end(), [&](const Edge& e) {
      return mark[e.node] == Mark::Coarse;
    });
    if (!has_coarse) mark[u] = Mark::Coarse;
  }

  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> coarse_id(n, none);
  std::size_t nc = 0;
  for (std::size_t u = 0; u < n; ++u) {
    if (mark[u] == Mark::Coarse) coarse_id[u] = nc++;
  }

  std::vector<Triplet> entries;
  for (std::size_t u = 0; u < n; ++u) {
    if (mark[u] == Mark::Coarse) {
      entries.push_back({u, coarse_id[u], 1.0});
      continue;
    }
    std::size_t count = 0;
    for (const auto& e : g.neighbors(u)) count += mark[e.node] == Mark::Coarse;
    const double w = 1.0 / static_cast<double>(count);
    for (const auto& e : g.neighbors(u)) {
      if (mark[e.node] == Mark::Coarse) entries.push_back({u, coarse_id[e.node], w});
    }
  }
  return csr_from_triplets(n, nc, entries);
}

ChoiceCoarsener::ChoiceCoarsener(CoarsenerChoice choice)
    : choice_(std::move(choice)) {
  choice_.validate();
}

CsrMatrix ChoiceCoarsener::prolongation(const CsrMatrix& a,
                                        std::size_t level) const {
  switch (choice_.kind) {
    case CoarsenerKind::GLCoarsener:
      return gl_coarsen(a, choice_, level);
    case CoarsenerKind::VanekAggregation: {
      auto p = vanek_coarsen(a, choice_.vanek_epsilon);
      if (choice_.prolongation_smoothing) {
        p = smooth_prolongation(a, p, *choice_.prolongation_smoothing);
      }
      return p;
    }
    case CoarsenerKind::Beck: {
      auto p = beck_coarsen(a);
      if (choice_.prolongation_smoothing) {
        p = smooth_prolongation(a, p, *choice_.prolongation_smoothing);
      }
      return p;
    }
  }
  throw ConfigError("unknown coarsener kind");
}

std::string ChoiceCoarsener::name() const {
  return std::string(to_string(choice_.kind));
}

}  // namespace glamg
