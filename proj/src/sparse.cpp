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

#include "glamg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "glamg/error.hpp"

namespace glamg {

namespace {

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected length " +
                         std::to_string(want) + ", got " +
                         std::to_string(got));
  }
}

}  // namespace

CsrMatrix::CsrMatrix(std::size_t n_rows, std::size_t n_cols,
                     std::vector<std::size_t> row_ptr,
                     std::vector<std::size_t> col_idx,
                     std::vector<double> values)
    : n_rows_(n_rows),
      n_cols_(n_cols),
      row_ptr_(std::move(row_ptr)),
      col_idx_(std::move(col_idx)),
      values_(std::move(values)) {
  if (row_ptr_.size() != n_rows_ + 1 || row_ptr_.front() != 0 ||
      row_ptr_.back() != values_.size() || col_idx_.size() != values_.size()) {
    throw DimensionError("CsrMatrix: inconsistent array lengths");
  }
  for (std::size_t i = 0; i < n_rows_; ++i) {
    if (row_ptr_[i] > row_ptr_[i + 1]) {
      throw DimensionError("CsrMatrix: row_ptr decreases at row " +
                           std::to_string(i));
    }
    for (auto k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (col_idx_[k] >= n_cols_ ||
          (k > row_ptr_[i] && col_idx_[k] <= col_idx_[k - 1])) {
        throw DimensionError("CsrMatrix: bad column index in row " +
                             std::to_string(i));
      }
    }
  }
}

CsrMatrix CsrMatrix::identity(std::size_t n) {
  return from_diagonal(DenseVector(n, 1.0));
}

CsrMatrix CsrMatrix::from_diagonal(std::span<const double> diag) {
  const auto n = diag.size();
  std::vector<std::size_t> ptr(n + 1), idx(n);
  std::iota(ptr.begin(), ptr.end(), std::size_t{0});
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return {n, n, std::move(ptr), std::move(idx),
          DenseVector(diag.begin(), diag.end())};
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= n_rows_ || j >= n_cols_) {
    throw DimensionError("CsrMatrix::at: index out of range");
  }
  const auto r = row(i);
  const auto it = std::lower_bound(r.cols.begin(), r.cols.end(), j);
  if (it == r.cols.end() || *it != j) return 0.0;
  return r.values[static_cast<std::size_t>(it - r.cols.begin())];
}

DenseVector CsrMatrix::diagonal() const {
  if (!square()) throw DimensionError("diagonal: matrix is not square");
  DenseVector d(n_rows_, 0.0);
  for (std::size_t i = 0; i < n_rows_; ++i) d[i] = at(i, i);
  return d;
}

CsrMatrix csr_from_triplets(std::size_t n_rows, std::size_t n_cols,
                            std::span<const Triplet> entries) {
  std::vector<std::size_t> count(n_rows + 1, 0);
  for (const auto& t : entries) {
    if (t.row >= n_rows || t.col >= n_cols) {
      throw DimensionError("csr_from_triplets: entry (" +
                           std::to_string(t.row) + ", " +
                           std::to_string(t.col) + ") outside " +
                           std::to_string(n_rows) + "x" +
                           std::to_string(n_cols));
    }
    ++count[t.row + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());

  // Bucket by row, then sort and merge each row.
  std::vector<std::pair<std::size_t, double>> bucket(entries.size());
  std::vector<std::size_t> fill(count.begin(), count.end() - 1);
  for (const auto& t : entries) bucket[fill[t.row]++] = {t.col, t.value};

  std::vector<std::size_t> ptr(n_rows + 1, 0), idx;
  DenseVector val;
  idx.reserve(entries.size());
  val.reserve(entries.size());
  for (std::size_t i = 0; i < n_rows; ++i) {
    auto first = bucket.begin() + static_cast<std::ptrdiff_t>(count[i]);
    auto last = bucket.begin() + static_cast<std::ptrdiff_t>(count[i + 1]);
    std::stable_sort(first, last, [](const auto& a, const auto& b) {
      return a.first < b.first;
    });
    for (auto it = first; it != last; ++it) {
      if (ptr[i] != idx.size() && idx.back() == it->first) {
        val.back() += it->second;
      } else {
        idx.push_back(it->first);
        val.push_back(it->second);
      }
    }
    ptr[i + 1] = idx.size();
  }
  return {n_rows, n_cols, std::move(ptr), std::move(idx), std::move(val)};
}

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  require_length(x.size(), a.cols(), "spmv input");
  require_length(y.size(), a.rows(), "spmv output");
  const auto ptr = a.row_ptr();
  const auto idx = a.col_idx();
  const auto val = a.values();
  const auto n = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(static) if (n > 20000)
  for (std::ptrdiff_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double s = 0.0;
    for (auto k = ptr[i]; k < ptr[i + 1]; ++k) s += val[k] * x[idx[k]];
    y[i] = s;
  }
}

DenseVector spmv(const CsrMatrix& a, std::span<const double> x) {
  DenseVector y(a.rows());
  spmv(a, x, y);
  return y;
}

CsrMatrix transpose(const CsrMatrix& a) {
  std::vector<std::size_t> ptr(a.cols() + 1, 0);
  for (auto c : a.col_idx()) ++ptr[c + 1];
  std::partial_sum(ptr.begin(), ptr.end(), ptr.begin());
  std::vector<std::size_t> idx(a.nnz()), fill(ptr.begin(), ptr.end() - 1);
  DenseVector val(a.nnz());
  // Visiting rows in order keeps the transposed column indices sorted.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      const auto dst = fill[r.cols[k]]++;
      idx[dst] = i;
      val[dst] = r.values[k];
    }
  }
  return {a.cols(), a.rows(), std::move(ptr), std::move(idx), std::move(val)};
}

CsrMatrix spgemm(const CsrMatrix& a, const CsrMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("spgemm: inner dimensions " +
                         std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> marker(b.cols(), unset);
  DenseVector acc(b.cols(), 0.0);
  std::vector<std::size_t> ptr(a.rows() + 1, 0), idx, cols;
  DenseVector val;

  for (std::size_t i = 0; i < a.rows(); ++i) {
    cols.clear();
    const auto ra = a.row(i);
    for (std::size_t ka = 0; ka < ra.size(); ++ka) {
      const auto rb = b.row(ra.cols[ka]);
      const double s = ra.values[ka];
      for (std::size_t kb = 0; kb < rb.size(); ++kb) {
        const auto j = rb.cols[kb];
        if (marker[j] != i) {
          marker[j] = i;
          acc[j] = 0.0;
          cols.push_back(j);
        }
        acc[j] += s * rb.values[kb];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (auto j : cols) {
      idx.push_back(j);
      val.push_back(acc[j]);
    }
    ptr[i + 1] = idx.size();
  }
  return {a.rows(), b.cols(), std::move(ptr), std::move(idx), std::move(val)};
}

CsrMatrix add(double alpha, const CsrMatrix& a, double beta,
              const CsrMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("add: operand shapes differ");
  }
  std::vector<std::size_t> ptr(a.rows() + 1, 0), idx;
  DenseVector val;
  idx.reserve(a.nnz() + b.nnz());
  val.reserve(a.nnz() + b.nnz());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto ra = a.row(i), rb = b.row(i);
    std::size_t ka = 0, kb = 0;
    while (ka < ra.size() || kb < rb.size()) {
      if (kb == rb.size() || (ka < ra.size() && ra.cols[ka] < rb.cols[kb])) {
        idx.push_back(ra.cols[ka]);
        val.push_back(alpha * ra.values[ka++]);
      } else if (ka == ra.size() || rb.cols[kb] < ra.cols[ka]) {
        idx.push_back(rb.cols[kb]);
        val.push_back(beta * rb.values[kb++]);
      } else {
        idx.push_back(ra.cols[ka]);
        val.push_back(alpha * ra.values[ka++] + beta * rb.values[kb++]);
      }
    }
    ptr[i + 1] = idx.size();
  }
  return {a.rows(), a.cols(), std::move(ptr), std::move(idx), std::move(val)};
}

CsrMatrix galerkin_product(const CsrMatrix& r, const CsrMatrix& a,
                           const CsrMatrix& p) {
  return spgemm(spgemm(r, a), p);
}

DenseVector residual(const CsrMatrix& a, std::span<const double> f,
                     std::span<const double> v) {
  require_length(f.size(), a.rows(), "residual rhs");
  auto r = spmv(a, v);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f[i] - r[i];
  return r;
}

double inf_norm(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

bool is_symmetric(const CsrMatrix& a, double tol) {
  if (!a.square()) return false;
  const auto t = transpose(a);
  const double scale = inf_norm(a.values());
  const auto diff = add(1.0, a, -1.0, t);
  return inf_norm(diff.values()) <= tol * scale;
}

DenseLu::DenseLu(const CsrMatrix& a) : n_(a.rows()) {
  if (!a.square()) throw DimensionError("DenseLu: matrix is not square");
  matrix_.assign(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto r = a.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      matrix_[i * n_ + r.cols[k]] = r.values[k];
    }
  }
  lu_ = matrix_;
  perm_.resize(n_);
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  const double scale = inf_norm(matrix_);
  const double tiny = scale * static_cast<double>(n_) *
                      std::numeric_limits<double>::epsilon();
  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n_; ++i) {
      if (std::abs(lu_[i * n_ + k]) > std::abs(lu_[piv * n_ + k])) piv = i;
    }
    if (!(std::abs(lu_[piv * n_ + k]) > tiny)) {
      throw SolverError("dense LU: matrix is singular (zero pivot in column " +
                        std::to_string(k) + ")");
    }
    if (piv != k) {
      std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(k * n_),
                       lu_.begin() + static_cast<std::ptrdiff_t>((k + 1) * n_),
                       lu_.begin() + static_cast<std::ptrdiff_t>(piv * n_));
      std::swap(perm_[k], perm_[piv]);
    }
    const double d = lu_[k * n_ + k];
    for (std::size_t i = k + 1; i < n_; ++i) {
      double& l = lu_[i * n_ + k];
      if (l == 0.0) continue;
      l /= d;
      for (std::size_t j = k + 1; j < n_; ++j) {
        lu_[i * n_ + j] -= l * lu_[k * n_ + j];
      }
    }
  }
}

void DenseLu::substitute(std::span<double> x) const {
  DenseVector y(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = x[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_[i * n_ + j] * y[j];
    y[i] = s;
  }
  for (std::size_t ii = n_; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t j = ii + 1; j < n_; ++j) s -= lu_[ii * n_ + j] * x[j];
    x[ii] = s / lu_[ii * n_ + ii];
  }
}

DenseVector DenseLu::solve(std::span<const double> b) const {
  require_length(b.size(), n_, "dense solve rhs");
  DenseVector x(b.begin(), b.end());
  substitute(x);
  // One refinement step against the unfactored matrix.
  DenseVector r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < n_; ++j) s -= matrix_[i * n_ + j] * x[j];
    r[i] = s;
  }
  substitute(r);
  for (std::size_t i = 0; i < n_; ++i) x[i] += r[i];
  return x;
}

DenseVector dense_solve(const CsrMatrix& a, std::span<const double> b) {
  return DenseLu(a).solve(b);
}

}  // namespace glamg
