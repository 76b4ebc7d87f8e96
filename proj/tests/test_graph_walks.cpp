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
#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "glamg/error.hpp"
#include "glamg/graph_walks.hpp"
#include "glamg/problems.hpp"
#include "support.hpp"

using namespace glamg;

namespace {

WalkConfig walk_cfg(double p, double q, std::uint64_t seed = 1) {
  WalkConfig c;
  c.return_p = p;
  c.in_out_q = q;
  c.seed = seed;
  return c;
}

WeightedGraph path(std::size_t n, double w = 1.0) {
  std::vector<WeightedEdge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, w});
  return WeightedGraph::from_edges(n, e);
}

// Triangle 0-1-2, pendant 3 on 1, node 4 joined to 2 and 3; uneven weights.
WeightedGraph five_node() {
  const std::vector<WeightedEdge> e{{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 1.5},
                                    {1, 3, 0.5}, {2, 4, 1.0}, {3, 4, 3.0}};
  return WeightedGraph::from_edges(5, e);
}

double weight_of(const std::vector<StepWeight>& w, std::size_t node) {
  for (const auto& s : w) {
    if (s.node == node) return s.weight;
  }
  return -1.0;
}

}  // namespace

TEST_CASE("graph_from_matrix") {
  const std::vector<double> d{1.0, 2.0, 3.0};
  CHECK(graph_from_matrix(CsrMatrix::from_diagonal(d)).edge_count() == 0);

  const auto g = graph_from_matrix(test::laplacian_1d(3));
  CHECK(g.edge_count() == 2);
  CHECK(g.weight(0, 1) == 1.0);
  CHECK(g.weight(1, 2) == 1.0);
  CHECK_FALSE(g.has_edge(0, 2));

  const auto grid = graph_from_matrix(poisson_2d({3, 3, RhsKind::Ones}).a);
  CHECK(grid.size() == 9);
  CHECK(grid.edge_count() == 12);
  for (std::size_t u = 0; u < 9; ++u) {
    for (const auto& e : grid.neighbors(u)) {
      CHECK(e.weight == doctest::Approx(16.0));  // 1/h^2 with h = 1/4
    }
  }

  const std::vector<Triplet> t{{0, 1, -2.0}, {1, 0, 0.5}, {1, 2, 0.0}};
  const auto h = graph_from_matrix(csr_from_triplets(3, 3, t));
  CHECK(h.weight(0, 1) == 2.0);
  CHECK(h.weight(1, 0) == 2.0);
  CHECK_FALSE(h.has_edge(1, 2));
}

TEST_CASE("WeightedGraph validation") {
  const std::vector<WeightedEdge> loop{{1, 1, 1.0}};
  CHECK_THROWS(WeightedGraph::from_edges(2, loop));
  const std::vector<WeightedEdge> neg{{0, 1, -1.0}};
  CHECK_THROWS(WeightedGraph::from_edges(2, neg));
  const std::vector<WeightedEdge> range{{0, 5, 1.0}};
  CHECK_THROWS(WeightedGraph::from_edges(2, range));
}

TEST_CASE("average_degree") {
  CHECK(average_degree(path(3)) == doctest::Approx(4.0 / 3.0));
  CHECK(average_degree(WeightedGraph::from_edges(4, {})) == 0.0);
  std::vector<WeightedEdge> k4;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) k4.push_back({i, j, 1.0});
  }
  CHECK(average_degree(WeightedGraph::from_edges(4, k4)) == 3.0);
  CHECK_THROWS(average_degree(WeightedGraph{}));

  // 32x32 grid: 2*(2*32*31)/1024 = 3.875 -> ceil(7.75) = 8 walks per node.
  const auto g = graph_from_matrix(poisson_2d({32, 32, RhsKind::Ones}).a);
  CHECK(resolve_walks_per_node(g, WalkConfig{}) == 8);
}

TEST_CASE("walk_step_weights") {
  const auto g = five_node();
  for (std::size_t cur = 0; cur < 5; ++cur) {
    for (const auto& prev : g.neighbors(cur)) {
      const auto w = walk_step_weights(g, prev.node, cur, walk_cfg(1.0, 1.0));
      REQUIRE(w.size() == g.degree(cur));
      for (const auto& s : w) CHECK(s.weight == g.weight(cur, s.node));
    }
  }

  const auto p3 = path(3, 2.0);
  const auto w = walk_step_weights(p3, 0, 1, walk_cfg(0.1, 1.0));
  CHECK(weight_of(w, 0) == doctest::Approx(20.0));
  CHECK(weight_of(w, 2) == doctest::Approx(2.0));

  const std::vector<WeightedEdge> tri{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}};
  const auto t = WeightedGraph::from_edges(4, tri);
  const auto tw = walk_step_weights(t, 0, 1, walk_cfg(1.0, 2.0));
  CHECK(weight_of(tw, 0) == 1.0);
  CHECK(weight_of(tw, 2) == 1.0);
  CHECK(weight_of(tw, 3) == 0.5);

  CHECK(walk_step_weights(WeightedGraph::from_edges(2, {}), 0, 1, walk_cfg(1, 1)).empty());
}

TEST_CASE("sampled steps pass a chi-square test") {
  // Critical values of chi-square at alpha = 0.01 for 1..3 degrees of freedom.
  const double critical[] = {0.0, 6.635, 9.210, 11.345};
  const auto g = five_node();
  const auto cfg = walk_cfg(0.3, 2.0);
  const std::size_t samples = 10000;
  for (std::size_t cur = 0; cur < 5; ++cur) {
    for (const auto& prev : g.neighbors(cur)) {
      const auto w = walk_step_weights(g, prev.node, cur, cfg);
      double total = 0.0;
      for (const auto& s : w) total += s.weight;
      std::map<std::size_t, double> counts;
      auto rng = CounterRng(99).split(cur * 5 + prev.node);
      for (std::size_t k = 0; k < samples; ++k) counts[sample_step(g, prev.node, cur, cfg, rng)] += 1.0;
      double chi2 = 0.0;
      for (const auto& s : w) {
        const double expect = static_cast<double>(samples) * s.weight / total;
        chi2 += (counts[s.node] - expect) * (counts[s.node] - expect) / expect;
      }
      CHECK(counts.size() <= w.size());
      CHECK(chi2 < critical[w.size() - 1]);
    }
  }
}

TEST_CASE("generate_walks") {
  CHECK(generate_walks(WeightedGraph::from_edges(3, {}), WalkConfig{}).walks.empty());

  auto cfg = walk_cfg(0.1, 1.0);
  cfg.walk_length = 3;
  cfg.walks_per_node = 4;
  const auto single = generate_walks(path(2), cfg);
  CHECK(single.walks.size() == 8);
  for (const auto& w : single.walks) {
    REQUIRE(w.size() == 3);
    CHECK(w == (w[0] == 0 ? std::vector<std::size_t>{0, 1, 0}
                          : std::vector<std::size_t>{1, 0, 1}));
  }

  // Isolated node 2 contributes no walks; ordering is by start node.
  const std::vector<WeightedEdge> e{{0, 1, 1.0}, {1, 3, 1.0}};
  const auto g = WeightedGraph::from_edges(4, e);
  cfg.walk_length = 10;
  cfg.walks_per_node = 2;
  const auto c = generate_walks(g, cfg);
  REQUIRE(c.walks.size() == 6);
  const std::size_t starts[] = {0, 0, 1, 1, 3, 3};
  for (std::size_t k = 0; k < 6; ++k) CHECK(c.walks[k].front() == starts[k]);
  CHECK(c.token_count() == 60);
}

TEST_CASE("walks follow edges and are deterministic") {
  const auto g = graph_from_matrix(poisson_2d({12, 9, RhsKind::Ones}).a);
  const auto cfg = walk_cfg(0.1, 1.0, 7);
  const auto a = generate_walks(g, cfg);
  const auto b = generate_walks(g, cfg);
  CHECK(a.walks == b.walks);
  CHECK(a.walks.size() == g.size() * resolve_walks_per_node(g, cfg));
  for (const auto& w : a.walks) {
    CHECK(w.size() == cfg.walk_length);
    for (std::size_t k = 1; k < w.size(); ++k) CHECK(g.has_edge(w[k - 1], w[k]));
  }
  CHECK(generate_walks(g, walk_cfg(0.1, 1.0, 8)).walks != a.walks);
}

TEST_CASE("Monte-Carlo transition frequencies on a path") {
  const auto g = path(5);
  auto cfg = walk_cfg(0.1, 1.0, 3);
  cfg.walks_per_node = 2000;
  const auto corpus = generate_walks(g, cfg);
  CHECK(corpus.walks.size() == 10000);
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, double>> seen;
  for (const auto& w : corpus.walks) {
    for (std::size_t k = 2; k < w.size(); ++k) seen[{w[k - 2], w[k - 1]}][w[k]] += 1.0;
  }
  for (const auto& [ctx, next] : seen) {
    const auto [prev, cur] = ctx;
    if (cur == 0 || cur == 4) continue;
    const auto w = walk_step_weights(g, prev, cur, cfg);
    double total = 0.0, count = 0.0;
    for (const auto& s : w) total += s.weight;
    for (const auto& [node, c] : next) count += c;
    for (const auto& s : w) {
      const auto it = next.find(s.node);
      const double freq = it == next.end() ? 0.0 : it->second / count;
      CHECK(std::abs(freq - s.weight / total) < 0.02);
    }
  }
}

TEST_CASE("write_corpus and config validation") {
  WalkCorpus c;
  c.walks = {{0, 1, 2}, {3}};
  std::ostringstream out;
  write_corpus(out, c);
  CHECK(out.str() == "0 1 2\n3\n");

  auto bad = WalkConfig{};
  bad.walk_length = 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = WalkConfig{};
  bad.return_p = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = WalkConfig{};
  bad.walks_per_node = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}
