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

#include "glamg/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>

#include "glamg/error.hpp"

namespace glamg {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// log s(x), stable for large |x|.
double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

std::size_t pairs_in_walk(std::size_t len, std::size_t window) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < len; ++i) {
    total += std::min(i, window) + std::min(len - 1 - i, window);
  }
  return total;
}

// Visits (center, context) pairs of one walk in a fixed order.
template <class Fn>
void for_each_pair(const std::vector<std::size_t>& walk, std::size_t window,
                   Fn&& fn) {
  const auto len = walk.size();
  for (std::size_t i = 0; i < len; ++i) {
    const auto lo = i > window ? i - window : 0;
    const auto hi = std::min(len - 1, i + window);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j != i) fn(walk[i], walk[j]);
    }
  }
}

// One SGD step on the pair; `neu` is scratch of length d.
void sgd_step(Embedding& emb, std::size_t center, std::size_t context,
              const NegativeSampler& sampler, std::size_t k, double lr,
              CounterRng& rng, std::vector<double>& neu) {
  const auto d = emb.dimension();
  double* zc = emb.in(center).data();
  std::fill(neu.begin(), neu.end(), 0.0);
  for (std::size_t t = 0; t <= k; ++t) {
    const auto target = t == 0 ? context : sampler(rng);
    const double label = t == 0 ? 1.0 : 0.0;
    double* zt = emb.out(target).data();
    double f = 0.0;
    for (std::size_t c = 0; c < d; ++c) f += zc[c] * zt[c];
    const double g = (label - sigmoid(f)) * lr;
    for (std::size_t c = 0; c < d; ++c) neu[c] += g * zt[c];
    for (std::size_t c = 0; c < d; ++c) zt[c] += g * zc[c];
  }
  for (std::size_t c = 0; c < d; ++c) zc[c] += neu[c];
}

}  // namespace

void EmbeddingConfig::validate() const {
  if (dimension < 1) throw ConfigError("embedding dimension must be >= 1");
  if (negatives < 1) throw ConfigError("negatives must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (!(lr_final > 0.0) || lr_initial < lr_final) {
    throw ConfigError("learning rates must satisfy lr_initial >= lr_final > 0");
  }
}

double cosine_similarity(const Embedding& emb, std::size_t u, std::size_t v) {
  if (u >= emb.size() || v >= emb.size()) {
    throw DimensionError("cosine_similarity: node index out of range");
  }
  return dot(emb.in(u), emb.in(v));
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double sgns_loss(std::span<const double> center, std::span<const double> context,
                 std::span<const std::span<const double>> negatives) {
  double loss = -log_sigmoid(dot(center, context));
  for (const auto& n : negatives) loss -= log_sigmoid(-dot(center, n));
  return loss;
}

double sgns_loss(const Embedding& emb, std::size_t center, std::size_t context,
                 std::span<const std::size_t> negatives) {
  const auto n = emb.size();
  if (center >= n || context >= n) {
    throw DimensionError("sgns_loss: node index out of range");
  }
  std::vector<std::span<const double>> negs;
  negs.reserve(negatives.size());
  for (auto u : negatives) {
    if (u >= n) throw DimensionError("sgns_loss: node index out of range");
    negs.push_back(emb.out(u));
  }
  return sgns_loss(emb.in(center), emb.out(context), negs);
}

SgnsGradient sgns_gradient(std::span<const double> center,
                           std::span<const double> context,
                           std::span<const std::span<const double>> negatives) {
  const auto d = center.size();
  SgnsGradient g;
  g.center.assign(d, 0.0);
  g.context.assign(d, 0.0);
  // d/dx [-log s(x)] = s(x) - 1
  const double gp = sigmoid(dot(center, context)) - 1.0;
  for (std::size_t c = 0; c < d; ++c) {
    g.center[c] += gp * context[c];
    g.context[c] = gp * center[c];
  }
  // d/dx [-log s(-x)] = s(x)
  for (const auto& n : negatives) {
    const double gn = sigmoid(dot(center, n));
    std::vector<double> dn(d);
    for (std::size_t c = 0; c < d; ++c) {
      g.center[c] += gn * n[c];
      dn[c] = gn * center[c];
    }
    g.negatives.push_back(std::move(dn));
  }
  return g;
}

NegativeSampler::NegativeSampler(const WalkCorpus& corpus,
                                 std::size_t n_nodes) {
  std::vector<double> counts(n_nodes, 0.0);
  for (const auto& walk : corpus.walks) {
    for (auto u : walk) {
      if (u >= n_nodes) {
        throw DimensionError("walk corpus references node " +
                             std::to_string(u) + " >= " +
                             std::to_string(n_nodes));
      }
      counts[u] += 1.0;
    }
  }
  probability_.resize(n_nodes);
  double total = 0.0;
  for (std::size_t u = 0; u < n_nodes; ++u) {
    probability_[u] = std::pow(counts[u], 0.75);
    total += probability_[u];
  }
  if (!(total > 0.0)) throw TrainingError("walk corpus is empty");
  for (auto& p : probability_) p /= total;

  // Vose's alias construction.
  keep_.assign(n_nodes, 1.0);
  alias_.resize(n_nodes);
  std::iota(alias_.begin(), alias_.end(), std::size_t{0});
  std::vector<double> scaled(n_nodes);
  std::vector<std::size_t> small, large;
  for (std::size_t u = 0; u < n_nodes; ++u) {
    scaled[u] = probability_[u] * static_cast<double>(n_nodes);
    (scaled[u] < 1.0 ? small : large).push_back(u);
  }
  while (!small.empty() && !large.empty()) {
    const auto s = small.back();
    small.pop_back();
    const auto l = large.back();
    keep_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] -= 1.0 - scaled[s];
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
}

std::size_t NegativeSampler::operator()(CounterRng& rng) const {
  const double x = rng.uniform() * static_cast<double>(keep_.size());
  const auto col = std::min(static_cast<std::size_t>(x), keep_.size() - 1);
  return x - static_cast<double>(col) < keep_[col] ? col : alias_[col];
}

Embedding initial_embedding(std::size_t n_nodes, const EmbeddingConfig& cfg) {
  cfg.validate();
  Embedding emb(n_nodes, cfg.dimension);
  auto rng = CounterRng(cfg.seed).split(0);
  const double half = 0.5 / static_cast<double>(cfg.dimension);
  for (std::size_t u = 0; u < n_nodes; ++u) {
    for (auto& x : emb.in(u)) x = (2.0 * rng.uniform() - 1.0) * half;
  }
  return emb;
}

Embedding train_embedding(const WalkCorpus& corpus, std::size_t n_nodes,
                          const EmbeddingConfig& cfg) {
  cfg.validate();
  if (corpus.token_count() == 0) throw TrainingError("walk corpus is empty");
  const NegativeSampler sampler(corpus, n_nodes);
  Embedding emb = initial_embedding(n_nodes, cfg);
  if (cfg.epochs == 0) return emb;

  // Pair offsets fix each pair's learning rate independently of scheduling.
  const auto n_walks = corpus.walks.size();
  std::vector<std::size_t> offset(n_walks + 1, 0);
  for (std::size_t w = 0; w < n_walks; ++w) {
    offset[w + 1] = offset[w] + pairs_in_walk(corpus.walks[w].size(), cfg.window);
  }
  const double per_epoch = static_cast<double>(offset.back());
  const double total = per_epoch * static_cast<double>(cfg.epochs);
  const double lr_span = cfg.lr_initial - cfg.lr_final;
  const CounterRng root(cfg.seed);

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double base = per_epoch * static_cast<double>(epoch);
    const auto train_walk = [&](std::size_t w, std::vector<double>& neu) {
      auto rng = root.split(1 + epoch * n_walks + w);
      double done = base + static_cast<double>(offset[w]);
      for_each_pair(corpus.walks[w], cfg.window,
                    [&](std::size_t center, std::size_t context) {
                      const double lr = cfg.lr_initial - lr_span * done / total;
                      sgd_step(emb, center, context, sampler, cfg.negatives, lr,
                               rng, neu);
                      done += 1.0;
                    });
    };
    if (cfg.parallel) {
      const auto nw = static_cast<std::ptrdiff_t>(n_walks);
#pragma omp parallel
      {
        std::vector<double> neu(cfg.dimension);
#pragma omp for schedule(dynamic, 32)
        for (std::ptrdiff_t w = 0; w < nw; ++w) {
          train_walk(static_cast<std::size_t>(w), neu);
        }
      }
    } else {
      std::vector<double> neu(cfg.dimension);
      for (std::size_t w = 0; w < n_walks; ++w) train_walk(w, neu);
    }
  }
  return emb;
}

double corpus_loss(const Embedding& emb, const WalkCorpus& corpus,
                   const EmbeddingConfig& cfg, std::uint64_t negative_seed) {
  const NegativeSampler sampler(corpus, emb.size());
  auto rng = CounterRng(negative_seed);
  std::vector<std::size_t> negs(cfg.negatives);
  double loss = 0.0;
  for (const auto& walk : corpus.walks) {
    for_each_pair(walk, cfg.window, [&](std::size_t center, std::size_t ctx) {
      for (auto& n : negs) n = sampler(rng);
      loss += sgns_loss(emb, center, ctx, negs);
    });
  }
  return loss;
}

void write_embedding(std::ostream& out, const Embedding& emb) {
  out << emb.size() << ' ' << emb.dimension() << '\n';
  out << std::setprecision(9);
  for (std::size_t u = 0; u < emb.size(); ++u) {
    const auto z = emb.in(u);
    for (std::size_t c = 0; c < z.size(); ++c) {
      if (c) out << ' ';
      out << z[c];
    }
    out << '\n';
  }
}

}  // namespace glamg
