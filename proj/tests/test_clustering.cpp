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

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "glamg/clustering.hpp"
#include "glamg/error.hpp"
#include "glamg/rng.hpp"

using namespace glamg;

namespace {

struct Points {
  std::vector<double> data;
  std::size_t n = 0;
  std::size_t d = 0;
  PointsView view() const { return PointsView(data, n, d); }
};

Points collinear() { return {{0.0, 1.0, 10.0, 11.0}, 4, 1}; }

// Two Gaussian-ish blobs of `per` points each around (0,0) and (6,6).
Points blobs(std::size_t per, std::uint64_t seed) {
  CounterRng rng(seed);
  Points p{{}, 2 * per, 2};
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t i = 0; i < per; ++i) {
      p.data.push_back(6.0 * static_cast<double>(b) + rng.uniform() - 0.5);
      p.data.push_back(6.0 * static_cast<double>(b) + rng.uniform() - 0.5);
    }
  }
  return p;
}

ClusterConfig cfg_for(std::size_t k, std::size_t b, std::uint64_t seed) {
  ClusterConfig c;
  c.n_clusters = k;
  c.batch_size = b;
  c.seed = seed;
  return c;
}

// Exhaustive minimum of the within-cluster sum of squares over 2-partitions.
std::vector<std::size_t> best_two_partition(const Points& p) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> labels(p.n), best_labels;
  for (std::size_t mask = 1; mask < (std::size_t{1} << (p.n - 1)); ++mask) {
    for (std::size_t i = 0; i < p.n; ++i) labels[i] = (mask >> i) & 1u;
    double cost = 0.0;
    for (std::size_t c = 0; c < 2; ++c) {
      std::vector<double> mean(p.d, 0.0);
      double count = 0.0;
      for (std::size_t i = 0; i < p.n; ++i) {
        if (labels[i] != c) continue;
        count += 1.0;
        for (std::size_t j = 0; j < p.d; ++j) mean[j] += p.data[i * p.d + j];
      }
      for (auto& m : mean) m /= count;
      for (std::size_t i = 0; i < p.n; ++i) {
        if (labels[i] != c) continue;
        for (std::size_t j = 0; j < p.d; ++j) {
          const double diff = p.data[i * p.d + j] - mean[j];
          cost += diff * diff;
        }
      }
    }
    if (cost < best) {
      best = cost;
      best_labels = labels;
    }
  }
  return best_labels;
}

bool same_partition(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("PointsView and config validation") {
  const std::vector<double> v(6, 0.0);
  CHECK_THROWS_AS(PointsView(v, 4, 2), DimensionError);
  CHECK_THROWS_AS(cfg_for(0, 1, 0).validate(4), ConfigError);
  CHECK_THROWS_AS(cfg_for(5, 1, 0).validate(4), ConfigError);
  CHECK_THROWS_AS(cfg_for(2, 0, 0).validate(4), ConfigError);
  CHECK_NOTHROW(cfg_for(4, 4, 0).validate(4));
}

TEST_CASE("kmeanspp_init") {
  const auto p = blobs(5, 1);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto s = kmeanspp_init(p.view(), p.n, seed);
    std::multiset<std::pair<double, double>> got, want;
    for (std::size_t c = 0; c < s.k; ++c) got.insert({s.centroid(c)[0], s.centroid(c)[1]});
    for (std::size_t i = 0; i < p.n; ++i) want.insert({p.data[2 * i], p.data[2 * i + 1]});
    CHECK(got == want);
    CHECK(s.counts == std::vector<std::size_t>(p.n, 1));
  }

  const auto one = kmeanspp_init(p.view(), 1, 3);
  bool found = false;
  for (std::size_t i = 0; i < p.n; ++i) {
    found |= one.centroid(0)[0] == p.data[2 * i] && one.centroid(0)[1] == p.data[2 * i + 1];
  }
  CHECK(found);
  CHECK_THROWS(kmeanspp_init(p.view(), p.n + 1, 0));

  // Pairs at 0 and 100: a cross-pair second pick is near certain.
  const Points pairs{{0.0, 1.0, 100.0, 101.0}, 4, 1};
  int split = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto s = kmeanspp_init(pairs.view(), 2, seed);
    if ((s.centroid(0)[0] < 50.0) != (s.centroid(1)[0] < 50.0)) ++split;
  }
  CHECK(split >= 95);
}

TEST_CASE("minibatch_step follows the running-mean recurrence") {
  CounterRng rng(2);
  for (std::size_t m = 1; m <= 10; ++m) {
    ClusterState s;
    s.k = 1;
    s.d = 3;
    s.centroids = {rng.uniform(), rng.uniform(), rng.uniform()};
    s.counts = {1};
    std::vector<double> oracle = s.centroids;
    double v = 1.0;
    std::vector<double> sum = s.centroids;
    for (std::size_t t = 0; t < m; ++t) {
      const std::vector<double> x{rng.uniform(), rng.uniform(), rng.uniform()};
      minibatch_step(s, 0, x);
      v += 1.0;
      for (std::size_t j = 0; j < 3; ++j) {
        oracle[j] = (1.0 - 1.0 / v) * oracle[j] + x[j] / v;
        sum[j] += x[j];
      }
    }
    CHECK(s.counts[0] == m + 1);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(s.centroids[j] == doctest::Approx(oracle[j]).epsilon(1e-14));
      CHECK(s.centroids[j] == doctest::Approx(sum[j] / static_cast<double>(m + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("minibatch_kmeans examples") {
  const Points same{{2.0, -1.0, 2.0, -1.0, 2.0, -1.0}, 3, 2};
  const auto r = minibatch_kmeans(same.view(), cfg_for(1, 2, 0));
  CHECK(r.state.centroid(0)[0] == 2.0);
  CHECK(r.state.centroid(0)[1] == -1.0);
  CHECK(r.assignment.labels == std::vector<std::size_t>{0, 0, 0});

  const auto b = blobs(20, 4);
  const auto full = minibatch_kmeans(b.view(), cfg_for(2, b.n, 1));
  for (std::size_t i = 0; i < b.n; ++i) {
    CHECK((full.assignment.labels[i] == full.assignment.labels[0]) == (i < 20));
  }

  const auto c = collinear();
  const auto lin = minibatch_kmeans(c.view(), cfg_for(2, 2, 3));
  CHECK(lin.assignment.labels[0] == lin.assignment.labels[1]);
  CHECK(lin.assignment.labels[2] == lin.assignment.labels[3]);
  CHECK(lin.assignment.labels[0] != lin.assignment.labels[2]);
}

TEST_CASE("kmeans_objective") {
  const Points p{{3.0, 4.0}, 1, 2};
  ClusterState s{1, 2, {0.0, 0.0}, {1}};
  CHECK(kmeans_objective(p.view(), s, {{0}, 1}) == 25.0);
  ClusterState at{1, 2, {3.0, 4.0}, {1}};
  CHECK(kmeans_objective(p.view(), at, {{0}, 1}) == 0.0);

  const auto c = collinear();
  ClusterState opt{2, 1, {0.5, 10.5}, {1, 1}};
  CHECK(kmeans_objective(c.view(), opt, {{0, 0, 1, 1}, 2}) == 1.0);
}

TEST_CASE("recovers the brute-force optimal partition") {
  const auto c = collinear();
  const auto best = best_two_partition(c);
  const auto b1 = blobs(6, 7), b2 = blobs(7, 8);
  const auto best1 = best_two_partition(b1), best2 = best_two_partition(b2);
  int hits = 0, hits1 = 0, hits2 = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    hits += same_partition(minibatch_kmeans(c.view(), cfg_for(2, 2, seed)).assignment.labels, best);
    hits1 += same_partition(minibatch_kmeans(b1.view(), cfg_for(2, 4, seed)).assignment.labels, best1);
    hits2 += same_partition(minibatch_kmeans(b2.view(), cfg_for(2, 5, seed)).assignment.labels, best2);
  }
  CHECK(hits >= 18);
  CHECK(hits1 >= 18);
  CHECK(hits2 >= 18);
}

TEST_CASE("full-batch iterations never raise the objective") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    CounterRng rng(seed);
    Points p{{}, 60, 3};
    for (std::size_t i = 0; i < 180; ++i) p.data.push_back(rng.uniform() * 4.0);
    auto state = kmeanspp_init(p.view(), 5, seed);
    double last = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 10; ++it) {
      const auto labels = nearest_centroids(p.view(), state);
      const double obj = kmeans_objective(p.view(), state, {labels, 5});
      CHECK(obj <= last * (1.0 + 1e-12));
      last = obj;
      for (std::size_t i = 0; i < p.n; ++i) minibatch_step(state, labels[i], p.view().row(i));
    }
  }
}

TEST_CASE("final labels are nearest-centroid consistent and deterministic") {
  CounterRng rng(10);
  Points p{{}, 300, 4};
  for (std::size_t i = 0; i < 1200; ++i) p.data.push_back(rng.uniform());
  const auto cfg = cfg_for(30, 20, 5);
  const auto r = minibatch_kmeans(p.view(), cfg);
  CHECK(nearest_centroids(p.view(), r.state) == r.assignment.labels);
  const auto sizes = r.assignment.cluster_sizes();
  CHECK(std::count(sizes.begin(), sizes.end(), 0u) == 0);
  CHECK(r.iterations <= 15 * 15);

  const auto again = minibatch_kmeans(p.view(), cfg);
  CHECK(again.assignment.labels == r.assignment.labels);
  CHECK(again.state.centroids == r.state.centroids);

  // Brute-force distance oracle for nearest_centroids.
  for (std::size_t i = 0; i < p.n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t c = 0; c < r.state.k; ++c) {
      double dist = 0.0;
      for (std::size_t j = 0; j < 4; ++j) {
        const double diff = p.data[i * 4 + j] - r.state.centroid(c)[j];
        dist += diff * diff;
      }
      if (dist < best) {
        best = dist;
        arg = c;
      }
    }
    CHECK(r.assignment.labels[i] == arg);
  }
}

TEST_CASE("empty clusters are repaired") {
  const Points dup{{0.0, 0.0, 0.0, 0.0, 5.0}, 5, 1};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto r = minibatch_kmeans(dup.view(), cfg_for(4, 2, seed));
    const auto sizes = r.assignment.cluster_sizes();
    CHECK(std::count(sizes.begin(), sizes.end(), 0u) == 0);
  }

  // A centroid far from every point attracts no label.
  const Points p{{0.0, 1.0, 2.0, 3.0}, 4, 1};
  ClusterState s{2, 1, {1.5, 100.0}, {1, 1}};
  CHECK(nearest_centroids(p.view(), s) == std::vector<std::size_t>{0, 0, 0, 0});
}

TEST_CASE("write_assignment") {
  std::ostringstream out;
  write_assignment(out, {{1, 0, 1}, 2});
  CHECK(out.str() == "0 1\n1 0\n2 1\n");
}
