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

#ifndef GLAMG_GRAPH_WALKS_HPP
#define GLAMG_GRAPH_WALKS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "glamg/rng.hpp"
#include "glamg/sparse.hpp"

namespace glamg {

struct Edge {
  std::size_t node;
  double weight;
};

struct WeightedEdge {
  std::size_t u;
  std::size_t v;
  double weight;
};

/// Undirected weighted graph in adjacency-list (CSR) form. Neighbor lists
/// are sorted by node id; no self loops; every weight is positive; edge
/// (u, v) is stored in both lists with the same weight.
class WeightedGraph {
 public:
  WeightedGraph() : offsets_(1, 0) {}

  /// Builds from undirected edges. Duplicate pairs keep the larger weight.
  /// Throws on self loops, non-positive weights or out-of-range nodes.
  static WeightedGraph from_edges(std::size_t n_nodes,
                                  std::span<const WeightedEdge> edges);

  std::size_t size() const { return offsets_.size() - 1; }
  std::span<const Edge> neighbors(std::size_t u) const {
    return std::span(edges_).subspan(offsets_[u], offsets_[u + 1] - offsets_[u]);
  }
  std::size_t degree(std::size_t u) const {
    return offsets_[u + 1] - offsets_[u];
  }
  /// Number of undirected edges.
  std::size_t edge_count() const { return edges_.size() / 2; }

  bool has_edge(std::size_t u, std::size_t v) const;
  /// Weight of (u, v), 0 when absent.
  double weight(std::size_t u, std::size_t v) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
};

/// Off-diagonal nonzero (i, j) becomes edge {i, j} with weight
/// max(|A_ij|, |A_ji|). Stored zeros and the diagonal are ignored.
WeightedGraph graph_from_matrix(const CsrMatrix& a);

/// Directed edge endpoints per node: 2 |E| / |V|.
double average_degree(const WeightedGraph& g);

struct WalkConfig {
  /// Walks started from each node; empty means ceil(2 * average_degree).
  std::optional<std::size_t> walks_per_node;
  std::size_t walk_length = 10;
  double return_p = 0.1;
  double in_out_q = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

std::size_t resolve_walks_per_node(const WeightedGraph& g,
                                   const WalkConfig& cfg);

struct StepWeight {
  std::size_t node;
  double weight;
};

/// Unnormalized second-order transition weights out of `cur` after arriving
/// from `prev`: w(cur, x) / p for x == prev, w(cur, x) when x is adjacent to
/// prev, w(cur, x) / q otherwise.
std::vector<StepWeight> walk_step_weights(const WeightedGraph& g,
                                          std::size_t prev, std::size_t cur,
                                          const WalkConfig& cfg);

/// Draws one second-order step. Requires `cur` to have at least one neighbor.
std::size_t sample_step(const WeightedGraph& g, std::size_t prev,
                        std::size_t cur, const WalkConfig& cfg,
                        CounterRng& rng);

struct WalkCorpus {
  std::vector<std::vector<std::size_t>> walks;

  std::size_t token_count() const;
};

/// `walks_per_node` walks from every non-isolated node, ordered by start
/// node then walk index. Node u draws from stream `split(u)` of the seed.
WalkCorpus generate_walks(const WeightedGraph& g, const WalkConfig& cfg);

/// One walk per line, space-separated node indices.
void write_corpus(std::ostream& out, const WalkCorpus& corpus);

}  // namespace glamg

#endif  // GLAMG_GRAPH_WALKS_HPP
