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

#ifndef GLAMG_EMBEDDING_HPP
#define GLAMG_EMBEDDING_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "glamg/graph_walks.hpp"

namespace glamg {

struct EmbeddingConfig {
  std::size_t dimension = 128;
  std::size_t window = 5;     // context radius
  std::size_t negatives = 5;  // k
  std::size_t epochs = 5;
  double lr_initial = 0.025;
  double lr_final = 0.0001;
  std::uint64_t seed = 0;
  /// Lock-free parallel SGD over walks. Results then depend on scheduling.
  bool parallel = false;

  void validate() const;
};

/// Node vectors. `in` rows are the published embedding z_u; `out` rows are
/// the context vectors used only during training.
class Embedding {
 public:
  Embedding() = default;
  Embedding(std::size_t n_nodes, std::size_t dimension)
      : n_(n_nodes), d_(dimension), in_(n_nodes * dimension, 0.0),
        out_(n_nodes * dimension, 0.0) {}

  std::size_t size() const { return n_; }
  std::size_t dimension() const { return d_; }

  std::span<double> in(std::size_t u) { return {in_.data() + u * d_, d_}; }
  std::span<const double> in(std::size_t u) const {
    return {in_.data() + u * d_, d_};
  }
  std::span<double> out(std::size_t u) { return {out_.data() + u * d_, d_}; }
  std::span<const double> out(std::size_t u) const {
    return {out_.data() + u * d_, d_};
  }

  /// Row-major n x d view of the published vectors.
  std::span<const double> in_matrix() const { return in_; }

  bool operator==(const Embedding&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> in_;
  std::vector<double> out_;
};

/// Dot product of the published vectors of u and v (unnormalized).
double cosine_similarity(const Embedding& emb, std::size_t u, std::size_t v);

double sigmoid(double x);

/// -log s(c.x) - sum_n log s(-c.n) for one (center, context) pair.
double sgns_loss(std::span<const double> center, std::span<const double> context,
                 std::span<const std::span<const double>> negatives);

/// Same loss reading the center from `in` and context/negatives from `out`.
double sgns_loss(const Embedding& emb, std::size_t center, std::size_t context,
                 std::span<const std::size_t> negatives);

struct SgnsGradient {
  std::vector<double> center;
  std::vector<double> context;
  std::vector<std::vector<double>> negatives;
};

/// Analytic gradient of `sgns_loss` with respect to each argument.
SgnsGradient sgns_gradient(std::span<const double> center,
                           std::span<const double> context,
                           std::span<const std::span<const double>> negatives);

/// Draws nodes from the corpus unigram distribution raised to the 3/4 power,
/// in O(1) per draw via an alias table.
class NegativeSampler {
 public:
  NegativeSampler(const WalkCorpus& corpus, std::size_t n_nodes);

  std::size_t operator()(CounterRng& rng) const;
  /// Normalized sampling probability of node u.
  double probability(std::size_t u) const { return probability_[u]; }

 private:
  std::vector<double> probability_;
  std::vector<double> keep_;  // chance of keeping the drawn column
  std::vector<std::size_t> alias_;
};

/// Initial vectors for `cfg`: `in` uniform in [-0.5/d, 0.5/d], `out` zero.
Embedding initial_embedding(std::size_t n_nodes, const EmbeddingConfig& cfg);

/// Skip-gram with negative sampling. Every node within `window` positions of
/// a walk position is a positive context; the learning rate decays linearly
/// from lr_initial to lr_final over all processed pairs.
Embedding train_embedding(const WalkCorpus& corpus, std::size_t n_nodes,
                          const EmbeddingConfig& cfg);

/// Summed SGNS loss over every (center, context) pair of the corpus, with
/// negatives drawn from a stream fixed by `negative_seed`.
double corpus_loss(const Embedding& emb, const WalkCorpus& corpus,
                   const EmbeddingConfig& cfg, std::uint64_t negative_seed);

/// "n d" header, then one line of d reals per node.
void write_embedding(std::ostream& out, const Embedding& emb);

}  // namespace glamg

#endif  // GLAMG_EMBEDDING_HPP
