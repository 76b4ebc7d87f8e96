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

#ifndef GLAMG_AMG_HPP
#define GLAMG_AMG_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "glamg/coarsening.hpp"
#include "glamg/smoothing.hpp"
#include "glamg/sparse.hpp"

namespace glamg {

struct SolverConfig {
  std::size_t pre_sweeps = 2;
  std::size_t post_sweeps = 7;
  /// Post-smooth on every level instead of only the finest one.
  bool post_smooth_all_levels = false;
  /// Smoother kind and omega; `sweeps` is replaced by pre/post counts.
  SmootherConfig smoother{};
  std::size_t coarsest_size = 20;
  std::size_t max_vcycles = 10000;
  double tolerance = 1e-4;
  /// Consecutive residual increases that abort the solve.
  std::size_t divergence_window = 5;
  CoarsenerChoice coarsener{};

  void validate() const;
};

struct Level {
  CsrMatrix a;
  DenseVector inv_diag;
  /// Transfer operators to the next coarser level; absent on the coarsest.
  std::optional<CsrMatrix> p;
  std::optional<CsrMatrix> r;
};

/// Levels ordered finest first, plus the factorized coarsest operator.
/// Immutable once built; one hierarchy may serve many right-hand sides.
struct Hierarchy {
  std::vector<Level> levels;
  DenseLu coarsest;
  /// Set when coarsening stopped because a level did not shrink.
  bool stalled = false;
  std::vector<std::string> warnings;

  std::size_t depth() const { return levels.size(); }
  std::vector<std::size_t> sizes() const;
};

/// Coarsens with `coarsener` until a level has at most `coarsest_size`
/// rows. A level that fails to shrink is kept as the coarsest and the
/// hierarchy is marked stalled.
Hierarchy build_hierarchy(const CsrMatrix& a, const SolverConfig& cfg,
                          const Coarsener& coarsener);
Hierarchy build_hierarchy(const CsrMatrix& a, const SolverConfig& cfg);

/// One V-cycle on `level` for A_level x = f starting from v.
DenseVector v_cycle(const Hierarchy& h, std::size_t level,
                    std::span<const double> f, std::span<const double> v,
                    const SolverConfig& cfg);

enum class SolveStatus { Converged, MaxCycles, Diverged };
std::string_view to_string(SolveStatus status);

struct SolveReport {
  std::size_t iterations = 0;
  /// Infinity norm of the residual after each V-cycle.
  std::vector<double> residual_history;
  double initial_residual = 0.0;
  bool converged = false;
  SolveStatus status = SolveStatus::MaxCycles;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
  std::vector<std::size_t> level_sizes;
  std::vector<std::string> warnings;

  /// Line-oriented key=value block.
  std::string to_key_value() const;
  static std::string csv_header();
  /// Row matching `csv_header()`.
  std::string to_csv_row(std::size_t size, const std::string& method,
                         const std::string& seed) const;
};

struct SolveResult {
  DenseVector solution;
  SolveReport report;
};

/// Repeats V-cycles on a prebuilt hierarchy until the residual infinity
/// norm drops below the tolerance. No cycle runs when v0 already satisfies
/// it.
SolveResult solve(const Hierarchy& h, std::span<const double> f,
                  std::span<const double> v0, const SolverConfig& cfg);

/// Builds the hierarchy once, then cycles; setup time is reported.
SolveResult solve(const CsrMatrix& a, std::span<const double> f,
                  std::span<const double> v0, const SolverConfig& cfg,
                  const Coarsener& coarsener);
SolveResult solve(const CsrMatrix& a, std::span<const double> f,
                  std::span<const double> v0, const SolverConfig& cfg);

}  // namespace glamg

#endif  // GLAMG_AMG_HPP
