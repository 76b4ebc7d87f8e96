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

#ifndef GLAMG_COARSENING_HPP
#define GLAMG_COARSENING_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "glamg/clustering.hpp"
#include "glamg/embedding.hpp"
#include "glamg/graph_walks.hpp"
#include "glamg/smoothing.hpp"
#include "glamg/sparse.hpp"

namespace glamg {

enum class CoarsenerKind { GLCoarsener, VanekAggregation, Beck };

std::string_view to_string(CoarsenerKind kind);
/// Accepts gl, vanek, beck.
CoarsenerKind parse_coarsener_kind(std::string_view name);

/// Settings of the embedding + clustering coarsener. The number of clusters
/// and the batch size are derived per level from the two ratios; the
/// corresponding fields of `cluster` are ignored.
struct GlSettings {
  WalkConfig walk;
  EmbeddingConfig embedding;
  ClusterConfig cluster;
  double cluster_ratio = 5.0;  // K = max(1, floor(n / cluster_ratio))
  double batch_ratio = 15.0;   // b = max(1, floor(n / batch_ratio))
};

struct CoarsenerChoice {
  CoarsenerKind kind = CoarsenerKind::GLCoarsener;
  GlSettings gl;
  double vanek_epsilon = 0.08;
  /// When set, the piecewise-constant prolongation is smoothed once with
  /// the given kind (sweeps is ignored).
  std::optional<SmootherConfig> prolongation_smoothing;

  void validate() const;
};

/// Partition of the fine nodes; every coarse index has at least one member.
struct AggregateSet {
  std::size_t n_fine = 0;
  std::size_t n_coarse = 0;
  ClusterAssignment assignment;

  /// Throws when a label is out of range or a cluster is empty.
  void validate() const;
};

/// P_ij = 1 when fine node i belongs to aggregate j.
CsrMatrix prolongation_from_aggregates(const AggregateSet& agg);

/// Jacobi: (I - D^-1 A) P, damped Jacobi: (I - w D^-1 A) P,
/// Gauss-Seidel: (I - (D + L)^-1 A) P, SOR: (I - w (D + w L)^-1 A) P,
/// with L the strictly lower triangle of A.
CsrMatrix smooth_prolongation(const CsrMatrix& a, const CsrMatrix& p_hat,
                              const SmootherConfig& cfg);

/// Embedding + mini-batch K-Means aggregates. `level` perturbs the seeds so
/// each hierarchy level draws its own random streams.
AggregateSet gl_aggregates(const CsrMatrix& a, const GlSettings& gl,
                           std::size_t level = 0);
CsrMatrix gl_coarsen(const CsrMatrix& a, const CoarsenerChoice& choice,
                     std::size_t level = 0);

/// Strong neighbors j != i with |A_ij| >= eps sqrt(|A_ii A_jj|).
std::vector<std::vector<std::size_t>> strong_neighborhoods(const CsrMatrix& a,
                                                           double epsilon);

/// Standard aggregation: (1) seed aggregates from untouched strong
/// neighborhoods, (2) attach leftovers to the strongest pass-1 neighbor,
/// (3) leftovers become singletons.
AggregateSet vanek_aggregates(const CsrMatrix& a, double epsilon);
CsrMatrix vanek_coarsen(const CsrMatrix& a, double epsilon);

/// Degree-ordered greedy independent set as coarse points; each fine point
/// interpolates with equal weights from its coarse neighbors.
CsrMatrix beck_coarsen(const CsrMatrix& a);

/// Coarsening strategy: maps a level operator to its prolongation.
class Coarsener {
 public:
  virtual ~Coarsener() = default;
  virtual CsrMatrix prolongation(const CsrMatrix& a,
                                 std::size_t level) const = 0;
  virtual std::string name() const = 0;
};

/// Coarsener for a configured choice, applying optional prolongation
/// smoothing after the base construction.
class ChoiceCoarsener final : public Coarsener {
 public:
  explicit ChoiceCoarsener(CoarsenerChoice choice);
  CsrMatrix prolongation(const CsrMatrix& a, std::size_t level) const override;
  std::string name() const override;

 private:
  CoarsenerChoice choice_;
};

}  // namespace glamg

#endif  // GLAMG_COARSENING_HPP
