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

#ifndef GLAMG_SPARSE_HPP
#define GLAMG_SPARSE_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace glamg {

using DenseVector = std::vector<double>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Compressed sparse row matrix. Immutable after construction; the
/// constructor checks every structural invariant (monotone row offsets,
/// strictly increasing in-range columns within a row).
class CsrMatrix {
 public:
  /// Non-owning view of one row.
  struct Row {
    std::span<const std::size_t> cols;
    std::span<const double> values;
    std::size_t size() const { return cols.size(); }
  };

  CsrMatrix() : row_ptr_(1, 0) {}
  CsrMatrix(std::size_t n_rows, std::size_t n_cols,
            std::vector<std::size_t> row_ptr,
            std::vector<std::size_t> col_idx, std::vector<double> values);

  static CsrMatrix identity(std::size_t n);
  static CsrMatrix from_diagonal(std::span<const double> diag);

  std::size_t rows() const { return n_rows_; }
  std::size_t cols() const { return n_cols_; }
  std::size_t nnz() const { return values_.size(); }
  bool square() const { return n_rows_ == n_cols_; }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::size_t> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }

  Row row(std::size_t i) const {
    const auto b = row_ptr_[i], e = row_ptr_[i + 1];
    return {std::span(col_idx_).subspan(b, e - b),
            std::span(values_).subspan(b, e - b)};
  }

  /// Stored value at (i, j), 0 when the entry is not stored.
  double at(std::size_t i, std::size_t j) const;

  /// Main diagonal (0 where absent). Requires a square matrix.
  DenseVector diagonal() const;

  /// Structural and numerical equality.
  bool operator==(const CsrMatrix& other) const = default;

 private:
  std::size_t n_rows_ = 0;
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
};

/// Assembles a CSR matrix; duplicate (row, col) pairs are summed.
CsrMatrix csr_from_triplets(std::size_t n_rows, std::size_t n_cols,
                            std::span<const Triplet> entries);

/// y = A x.
DenseVector spmv(const CsrMatrix& a, std::span<const double> x);
void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);

CsrMatrix transpose(const CsrMatrix& a);

/// Sparse product A*B (row-wise Gustavson). Keeps structurally produced
/// entries even when they cancel to zero.
CsrMatrix spgemm(const CsrMatrix& a, const CsrMatrix& b);

/// alpha*A + beta*B on the union pattern.
CsrMatrix add(double alpha, const CsrMatrix& a, double beta,
              const CsrMatrix& b);

/// Galerkin triple product R*A*P, evaluated as (R*A)*P.
CsrMatrix galerkin_product(const CsrMatrix& r, const CsrMatrix& a,
                           const CsrMatrix& p);

/// f - A v.
DenseVector residual(const CsrMatrix& a, std::span<const double> f,
                     std::span<const double> v);

/// max_i |x_i|; 0 for an empty vector.
double inf_norm(std::span<const double> x);

/// True when A equals its transpose to within `tol` relative to max |A_ij|.
bool is_symmetric(const CsrMatrix& a, double tol = 0.0);

/// Dense LU factorization with partial pivoting, for the coarsest level.
class DenseLu {
 public:
  DenseLu() = default;
  /// Throws SolverError when a pivot vanishes.
  explicit DenseLu(const CsrMatrix& a);

  std::size_t size() const { return n_; }
  DenseVector solve(std::span<const double> b) const;

 private:
  void substitute(std::span<double> x) const;

  std::size_t n_ = 0;
  std::vector<double> matrix_;  // original, row-major, for refinement
  std::vector<double> lu_;      // row-major packed L\U
  std::vector<std::size_t> perm_;
};

/// Solves A x = b by dense LU with one step of iterative refinement.
DenseVector dense_solve(const CsrMatrix& a, std::span<const double> b);

}  // namespace glamg

#endif  // GLAMG_SPARSE_HPP
