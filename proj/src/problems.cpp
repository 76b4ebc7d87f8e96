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

#include "glamg/problems.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "glamg/error.hpp"

namespace glamg {

RhsKind parse_rhs_kind(std::string_view name) {
  if (name == "zero") return RhsKind::Zero;
  if (name == "ones") return RhsKind::Ones;
  if (name == "sin" || name == "manufactured") return RhsKind::ManufacturedSin;
  throw ConfigError("unknown right-hand side '" + std::string(name) + "'");
}

namespace {

double coord(std::size_t i, std::size_t n) {
  return static_cast<double>(i + 1) / static_cast<double>(n + 1);
}

}  // namespace

PoissonProblem poisson_2d(const PoissonSpec& spec) {
  const auto nx = spec.nx, ny = spec.ny;
  if (nx < 1 || ny < 1) throw ConfigError("poisson_2d: grid must be non-empty");
  const double h = 1.0 / static_cast<double>(nx + 1);
  const double hy = 1.0 / static_cast<double>(ny + 1);
  const double s = 1.0 / (h * h);
  const double sy = 1.0 / (hy * hy);

  std::vector<Triplet> t;
  t.reserve(5 * nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const auto k = j * nx + i;
      if (j > 0) t.push_back({k, k - nx, -sy});
      if (i > 0) t.push_back({k, k - 1, -s});
      t.push_back({k, k, 2.0 * s + 2.0 * sy});
      if (i + 1 < nx) t.push_back({k, k + 1, -s});
      if (j + 1 < ny) t.push_back({k, k + nx, -sy});
    }
  }

  PoissonProblem p;
  p.h = h;
  p.a = csr_from_triplets(nx * ny, nx * ny, t);
  p.f.assign(nx * ny, 0.0);
  if (spec.rhs == RhsKind::Ones) {
    p.f.assign(nx * ny, 1.0);
  } else if (spec.rhs == RhsKind::ManufacturedSin) {
    const double c = 2.0 * std::numbers::pi * std::numbers::pi;
    const auto u = manufactured_solution(spec);
    for (std::size_t k = 0; k < u.size(); ++k) p.f[k] = c * u[k];
  }
  return p;
}

DenseVector manufactured_solution(const PoissonSpec& spec) {
  DenseVector u(spec.nx * spec.ny);
  for (std::size_t j = 0; j < spec.ny; ++j) {
    for (std::size_t i = 0; i < spec.nx; ++i) {
      u[j * spec.nx + i] = std::sin(std::numbers::pi * coord(i, spec.nx)) *
                           std::sin(std::numbers::pi * coord(j, spec.ny));
    }
  }
  return u;
}

std::size_t nearest_square_side(std::size_t size) {
  auto side = static_cast<std::size_t>(std::llround(std::sqrt(
      static_cast<double>(size))));
  return side < 1 ? 1 : side;
}

}  // namespace glamg
