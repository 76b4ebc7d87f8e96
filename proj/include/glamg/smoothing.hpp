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

#ifndef GLAMG_SMOOTHING_HPP
#define GLAMG_SMOOTHING_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "glamg/sparse.hpp"

namespace glamg {

enum class SmootherKind { Jacobi, DampedJacobi, GaussSeidel, SOR };

std::string_view to_string(SmootherKind kind);
/// Accepts jacobi, damped_jacobi, gauss_seidel (or gs), sor.
SmootherKind parse_smoother_kind(std::string_view name);

struct SmootherConfig {
  SmootherKind kind = SmootherKind::Jacobi;
  double omega = 2.0 / 3.0;  // ignored by Jacobi and GaussSeidel
  std::size_t sweeps = 1;

  /// Throws ConfigError when omega is outside (0, 2) for a kind that uses it.
  void validate() const;
};

struct DluSplit {
  CsrMatrix d;  // main diagonal
  CsrMatrix l;  // strictly lower triangle
  CsrMatrix u;  // strictly upper triangle
  /// Rows whose diagonal is zero or not stored.
  std::vector<std::size_t> zero_diagonal_rows;
};

/// A = L + D + U.
DluSplit split_dlu(const CsrMatrix& a);

/// Inverse diagonal; throws SolverError on a zero or missing diagonal entry.
DenseVector inverse_diagonal(const CsrMatrix& a);

/// Applies `cfg.sweeps` stationary sweeps to A v = f starting from `v`.
/// Gauss-Seidel and SOR sweep forward in ascending row order.
DenseVector smooth(const CsrMatrix& a, std::span<const double> f,
                   std::span<const double> v, const SmootherConfig& cfg);

/// In-place variant with a precomputed inverse diagonal; `v` is updated.
void smooth_inplace(const CsrMatrix& a, std::span<const double> inv_diag,
                    std::span<const double> f, std::span<double> v,
                    const SmootherConfig& cfg);

}  // namespace glamg

#endif  // GLAMG_SMOOTHING_HPP
