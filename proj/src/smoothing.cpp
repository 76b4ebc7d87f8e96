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

#include "glamg/smoothing.hpp"

#include <vector>

#include "glamg/error.hpp"

namespace glamg {

std::string_view to_string(SmootherKind kind) {
  switch (kind) {
    case SmootherKind::Jacobi: return "jacobi";
    case SmootherKind::DampedJacobi: return "damped_jacobi";
    case SmootherKind::GaussSeidel: return "gauss_seidel";
    case SmootherKind::SOR: return "sor";
  }
  return "?";
}

SmootherKind parse_smoother_kind(std::string_view name) {
  if (name == "jacobi") return SmootherKind::Jacobi;
  if (name == "damped_jacobi" || name == "wjacobi")
    return SmootherKind::DampedJacobi;
  if (name == "gauss_seidel" || name == "gs") return SmootherKind::GaussSeidel;
  if (name == "sor") return SmootherKind::SOR;
  throw ConfigError("unknown smoother '" + std::string(name) + "'");
}

void SmootherConfig::validate() const {
  const bool uses_omega =
      kind == SmootherKind::DampedJacobi || kind == SmootherKind::SOR;
  if (uses_omega && !(omega > 0.0 && omega < 2.0)) {
    throw ConfigError("smoother omega must lie in (0, 2)");
  }
}

DluSplit split_dlu(const CsrMatrix& a) {
  if (!a.square()) throw DimensionError("split_dlu: matrix is not square");
  std::vector<Triplet> d, l, u;
  DluSplit out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    bool has_diag = false;
    for (std::size_t k = 0; k < r.size(); ++k) {
      const auto j = r.cols[k];
      if (j < i) {
        l.push_back({i, j, r.values[k]});
      } else if (j > i) {
        u.push_back({i, j, r.values[k]});
      } else {
        d.push_back({i, j, r.values[k]});
        has_diag = r.values[k] != 0.0;
      }
    }
    if (!has_diag) out.zero_diagonal_rows.push_back(i);
  }
  const auto n = a.rows();
  out.d = csr_from_triplets(n, n, d);
  out.l = csr_from_triplets(n, n, l);
  out.u = csr_from_triplets(n, n, u);
  return out;
}

DenseVector inverse_diagonal(const CsrMatrix& a) {
  auto d = a.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0.0) {
      throw SolverError("zero diagonal entry in row " + std::to_string(i));
    }
    d[i] = 1.0 / d[i];
  }
  return d;
}

void smooth_inplace(const CsrMatrix& a, std::span<const double> inv_diag,
                    std::span<const double> f, std::span<double> v,
                    const SmootherConfig& cfg) {
  const auto n = a.rows();
  if (!a.square() || f.size() != n || v.size() != n || inv_diag.size() != n) {
    throw DimensionError("smooth: operand dimensions do not match");
  }
  if (cfg.sweeps == 0) return;
  cfg.validate();

  const auto ptr = a.row_ptr();
  const auto idx = a.col_idx();
  const auto val = a.values();

  switch (cfg.kind) {
    case SmootherKind::Jacobi:
    case SmootherKind::DampedJacobi: {
      const double w = cfg.kind == SmootherKind::Jacobi ? 1.0 : cfg.omega;
      std::vector<double> next(n);
      for (std::size_t s = 0; s < cfg.sweeps; ++s) {
        const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (nn > 20000)
        for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
          const auto i = static_cast<std::size_t>(ii);
          // f_i - sum_{j != i} a_ij v_j
          double off = f[i];
          for (auto k = ptr[i]; k < ptr[i + 1]; ++k) {
            if (idx[k] != i) off -= val[k] * v[idx[k]];
          }
          next[i] = (1.0 - w) * v[i] + w * inv_diag[i] * off;
        }
        std::copy(next.begin(), next.end(), v.begin());
      }
      break;
    }
    case SmootherKind::GaussSeidel:
    case SmootherKind::SOR: {
      const double w = cfg.kind == SmootherKind::GaussSeidel ? 1.0 : cfg.omega;
      for (std::size_t s = 0; s < cfg.sweeps; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
          double off = f[i];
          for (auto k = ptr[i]; k < ptr[i + 1]; ++k) {
            if (idx[k] != i) off -= val[k] * v[idx[k]];
          }
          v[i] = (1.0 - w) * v[i] + w * inv_diag[i] * off;
        }
      }
      break;
    }
  }
}

DenseVector smooth(const CsrMatrix& a, std::span<const double> f,
                   std::span<const double> v, const SmootherConfig& cfg) {
  DenseVector out(v.begin(), v.end());
  if (cfg.sweeps == 0) {
    if (v.size() != a.rows()) throw DimensionError("smooth: bad vector size");
    return out;
  }
  const auto inv = inverse_diagonal(a);
  smooth_inplace(a, inv, f, out, cfg);
  return out;
}

}  // namespace glamg
