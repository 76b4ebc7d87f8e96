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

#ifndef GLAMG_BENCHMARK_HPP
#define GLAMG_BENCHMARK_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "glamg/amg.hpp"
#include "glamg/config.hpp"

namespace glamg {

/// Sweep over Poisson sizes, coarsening methods and seeds. Each run uses
/// the nearest square grid, f = 1, v0 = 0. `base` holds every other
/// solver setting; its tolerance is replaced by `tolerance`.
struct BenchmarkSpec {
  std::vector<std::size_t> sizes{1024};
  std::vector<CoarsenerKind> methods{CoarsenerKind::Beck,
                                     CoarsenerKind::VanekAggregation,
                                     CoarsenerKind::GLCoarsener};
  std::vector<std::uint64_t> seeds{0};
  double tolerance = 1e-4;
  SolverConfig base{};

  void validate() const;
};

/// Reads `sizes`, `methods`, `seeds` (comma lists) and every solver key.
BenchmarkSpec benchmark_spec_from_config(ConfigMap map);

struct BenchmarkRow {
  std::size_t size = 0;  // true unknown count
  std::string method;
  std::string seed;  // seed value, or "median" for an aggregate row
  double iterations = 0.0;
  bool converged = false;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  bool aggregate = false;
  std::string error;  // set when the run threw
};

struct BenchmarkTable {
  std::vector<BenchmarkRow> rows;

  /// Median iterations of (size, method), from its aggregate row.
  double median_iterations(std::size_t size, CoarsenerKind method) const;
};

/// Runs every (size, method, seed) cell; a failing cell yields a row with
/// converged=false instead of aborting. Rows are ordered by size, then
/// method in spec order, then seed, each group followed by its median row.
BenchmarkTable run_benchmark(const BenchmarkSpec& spec);

/// Header "size,method,seed,iterations,converged,setup_seconds,solve_seconds".
void write_benchmark_csv(std::ostream& out, const BenchmarkTable& table);

}  // namespace glamg

#endif  // GLAMG_BENCHMARK_HPP
