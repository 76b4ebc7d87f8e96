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

#include "glamg/graph_walks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "glamg/error.hpp"

namespace glamg {

WeightedGraph WeightedGraph::from_edges(std::size_t n_nodes,
                                        std::span<const WeightedEdge> edges) {
  struct Half {
    std::size_t from, to;
    double w;
  };
  std::vector<Half> halves;
  halves.reserve(2 * edges.size());
  for (const auto& e : edges) {
    if (e.u >= n_nodes || e.v >= n_nodes) {
      throw DimensionError("WeightedGraph: edge endpoint out of range");
    }
    if (e.u == e.v) throw DimensionError("WeightedGraph: self loop");
    if (!(e.weight > 0.0)) {
      throw DimensionError("WeightedGraph: edge weight must be positive");
    }
    halves.push_back({e.u, e.v, e.weight});
    halves.push_back({e.v, e.u, e.weight});
  }
  std::sort(halves.begin(), halves.end(), [](const Half& a, const Half& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });

  WeightedGraph g;
  g.offsets_.assign(n_nodes + 1, 0);
  for (std::size_t k = 0; k < halves.size(); ++k) {
    const auto& h = halves[k];
    if (k > 0 && halves[k - 1].from == h.from && halves[k - 1].to == h.to) {
      g.edges_.back().weight = std::max(g.edges_.back().weight, h.w);
      continue;
    }
    g.edges_.push_back({h.to, h.w});
    ++g.offsets_[h.from + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  return g;
}

bool WeightedGraph::has_edge(std::size_t u, std::size_t v) const {
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(
      nb.begin(), nb.end(), v,
      [](const Edge& e, std::size_t x) { return e.node < x; });
  return it != nb.end() && it->node == v;
}

double WeightedGraph::weight(std::size_t u, std::size_t v) const {
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(
      nb.begin(), nb.end(), v,
      [](const Edge& e, std::size_t x) { return e.node < x; });
  return it != nb.end() && it->node == v ? it->weight : 0.0;
}

WeightedGraph graph_from_matrix(const CsrMatrix& a) {
  if (!a.square()) throw DimensionError("graph_from_matrix: matrix not square");
  std::vector<WeightedEdge> edges;
  edges.reserve(a.nnz());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r.cols[k] != i && r.values[k] != 0.0) {
        edges.push_back({i, r.cols[k], std::abs(r.values[k])});
      }
    }
  }
  return WeightedGraph::from_edges(a.rows(), edges);
}

double average_degree(const WeightedGraph& g) {
  if (g.size() == 0) throw DimensionError("average_degree: empty graph");
  return 2.0 * static_cast<double>(g.edge_count()) /
         static_cast<double>(g.size());
}

void WalkConfig::validate() const {
  if (walk_length < 2) throw ConfigError("walk_length must be at least 2");
  if (walks_per_node && *walks_per_node < 1) {
    throw ConfigError("walks_per_node must be at least 1");
  }
  if (!(return_p > 0.0) || !(in_out_q > 0.0)) {
    throw ConfigError("walk parameters p and q must be positive");
  }
}

std::size_t resolve_walks_per_node(const WeightedGraph& g,
                                   const WalkConfig& cfg) {
  if (cfg.walks_per_node) return *cfg.walks_per_node;
  if (g.size() == 0) return 1;
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(2.0 * average_degree(g))));
}

std::vector<StepWeight> walk_step_weights(const WeightedGraph& g,
                                          std::size_t prev, std::size_t cur,
                                          const WalkConfig& cfg) {
  std::vector<StepWeight> out;
  const auto nb = g.neighbors(cur);
  out.reserve(nb.size());
  for (const auto& e : nb) {
    double alpha;
    if (e.node == prev) {
      alpha = 1.0 / cfg.return_p;
    } else if (g.has_edge(prev, e.node)) {
      alpha = 1.0;
    } else {
      alpha = 1.0 / cfg.in_out_q;
    }
    out.push_back({e.node, e.weight * alpha});
  }
  return out;
}

namespace {

// Inverse-CDF draw over unnormalized weights.
template <class Weights, class Proj>
std::size_t draw(const Weights& ws, Proj weight_of, CounterRng& rng) {
  double total = 0.0;
  for (const auto& w : ws) total += weight_of(w);
  const double target = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t k = 0; k < ws.size(); ++k) {
    acc += weight_of(ws[k]);
    if (target < acc) return k;
  }
  return ws.size() - 1;
}

}  // namespace

std::size_t sample_step(const WeightedGraph& g, std::size_t prev,
                        std::size_t cur, const WalkConfig& cfg,
                        CounterRng& rng) {
  const auto ws = walk_step_weights(g, prev, cur, cfg);
  if (ws.empty()) throw DimensionError("sample_step: node has no neighbors");
  return ws[draw(ws, [](const StepWeight& s) { return s.weight; }, rng)].node;
}

std::size_t WalkCorpus::token_count() const {
  std::size_t n = 0;
  for (const auto& w : walks) n += w.size();
  return n;
}

WalkCorpus generate_walks(const WeightedGraph& g, const WalkConfig& cfg) {
  cfg.validate();
  const auto n = g.size();
  const auto per_node = resolve_walks_per_node(g, cfg);
  const CounterRng root(cfg.seed);

  std::vector<std::vector<std::size_t>> slots(n * per_node);
  const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t uu = 0; uu < nn; ++uu) {
    const auto start = static_cast<std::size_t>(uu);
    if (g.degree(start) == 0) continue;
    auto rng = root.split(start);
    for (std::size_t w = 0; w < per_node; ++w) {
      auto& walk = slots[start * per_node + w];
      walk.reserve(cfg.walk_length);
      walk.push_back(start);
      const auto first = g.neighbors(start);
      walk.push_back(
          first[draw(first, [](const Edge& e) { return e.weight; }, rng)].node);
      while (walk.size() < cfg.walk_length) {
        const auto cur = walk.back();
        if (g.degree(cur) == 0) break;
        walk.push_back(sample_step(g, walk[walk.size() - 2], cur, cfg, rng));
      }
    }
  }

  WalkCorpus corpus;
  for (auto& w : slots) {
    if (!w.empty()) corpus.walks.push_back(std::move(w));
  }
  return corpus;
}

void write_corpus(std::ostream& out, const WalkCorpus& corpus) {
  for (const auto& walk : corpus.walks) {
    for (std::size_t k = 0; k < walk.size(); ++k) {
      if (k) out << ' ';
      out << walk[k];
    }
    out << '\n';
  }
}

}  // namespace glamg
