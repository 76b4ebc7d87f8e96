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

#ifndef GLAMG_PROBLEMS_HPP
#define GLAMG_PROBLEMS_HPP

#include <cstddef>
#include <string_view>

#include "glamg/sparse.hpp"

namespace glamg {

enum class RhsKind { Zero, Ones, ManufacturedSin };

/// Accepts zero, ones, sin.
RhsKind parse_rhs_kind(std::string_view name);

/// -Laplace(u) = f on the unit square, homogeneous Dirichlet boundary,
/// nx x ny interior grid points numbered row by row (k = j * nx + i).
struct PoissonSpec {
  std::size_t nx = 32;
  std::size_t ny = 32;
  RhsKind rhs = RhsKind::Ones;
};

struct PoissonProblem {
  CsrMatrix a;
  DenseVector f;
  double h = 0.0;
};

/// Five-point stencil (4 on the diagonal, -1 per interior neighbor) scaled
/// by 1/h^2 with h = 1/(nx+1). A non-square grid uses hy = 1/(ny+1) for the
/// vertical couplings so the domain stays the unit square. ManufacturedSin
/// uses f = 2 pi^2 sin(pi x) sin(pi y), whose continuous solution is
/// sin(pi x) sin(pi y).
PoissonProblem poisson_2d(const PoissonSpec& spec);

/// sin(pi x) sin(pi y) sampled at the grid points of `spec`.
DenseVector manufactured_solution(const PoissonSpec& spec);

/// Side of the square grid whose unknown count is closest to `size`.
std::size_t nearest_square_side(std::size_t size);

}  // namespace glamg

#endif  // GLAMG_PROBLEMS_HPP
