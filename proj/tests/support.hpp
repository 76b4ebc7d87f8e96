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

#ifndef GLAMG_TESTS_SUPPORT_HPP
#define GLAMG_TESTS_SUPPORT_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "glamg/rng.hpp"
#include "glamg/sparse.hpp"

namespace glamg::test {

// Dense copy read straight from the CSR arrays, independent of the kernels.
inline Eigen::MatrixXd dense(const CsrMatrix& a) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(a.rows()),
                                            static_cast<Eigen::Index>(a.cols()));
  const auto rp = a.row_ptr();
  const auto ci = a.col_idx();
  const auto va = a.values();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (auto k = rp[i]; k < rp[i + 1]; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(ci[k])) += va[k];
    }
  }
  return m;
}

inline Eigen::VectorXd to_eigen(const std::vector<double>& x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(),
                                           static_cast<Eigen::Index>(x.size()));
}

inline CsrMatrix laplacian_1d(std::size_t n) {
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back({i, i, 2.0});
    if (i > 0) t.push_back({i, i - 1, -1.0});
    if (i + 1 < n) t.push_back({i, i + 1, -1.0});
  }
  return csr_from_triplets(n, n, t);
}

inline CsrMatrix random_sparse(std::size_t rows, std::size_t cols,
                               std::size_t entries, CounterRng& rng) {
  std::vector<Triplet> t;
  for (std::size_t k = 0; k < entries; ++k) {
    t.push_back({rng.below(rows), rng.below(cols), 2.0 * rng.uniform() - 1.0});
  }
  return csr_from_triplets(rows, cols, t);
}

inline std::vector<double> random_vector(std::size_t n, CounterRng& rng) {
  std::vector<double> x(n);
  for (auto& v : x) v = 2.0 * rng.uniform() - 1.0;
  return x;
}

inline double max_abs_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

inline double min_eigenvalue(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline Eigen::Index rank(const Eigen::MatrixXd& m) {
  return Eigen::FullPivLU<Eigen::MatrixXd>(m).rank();
}

}  // namespace glamg::test

#endif  // GLAMG_TESTS_SUPPORT_HPP
