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

#include "glamg/amg.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "glamg/error.hpp"

namespace glamg {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

SmootherConfig with_sweeps(const SmootherConfig& base, std::size_t sweeps) {
  SmootherConfig c = base;
  c.sweeps = sweeps;
  return c;
}

template <class T>
std::string join(const std::vector<T>& xs) {
  std::ostringstream ss;
  ss.precision(17);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) ss << ',';
    ss << xs[k];
  }
  return ss.str();
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
  if (coarsest_size < 1) throw ConfigError("coarsest_size must be >= 1");
  if (divergence_window < 1) throw ConfigError("divergence_window must be >= 1");
  smoother.validate();
  coarsener.validate();
}

std::vector<std::size_t> Hierarchy::sizes() const {
  std::vector<std::size_t> s;
  for (const auto& l : levels) s.push_back(l.a.rows());
  return s;
}

Hierarchy build_hierarchy(const CsrMatrix& a, const SolverConfig& cfg,
                          const Coarsener& coarsener) {
  if (!a.square()) throw DimensionError("build_hierarchy: matrix not square");
  Hierarchy h;
  h.levels.push_back({a, inverse_diagonal(a), std::nullopt, std::nullopt});

  while (h.levels.back().a.rows() > cfg.coarsest_size) {
    auto& fine = h.levels.back();
    const auto level = h.levels.size() - 1;
    auto p = coarsener.prolongation(fine.a, level);
    if (p.rows() != fine.a.rows()) {
      throw DimensionError("coarsener returned a prolongation with " +
                           std::to_string(p.rows()) + " rows for a level of " +
                           std::to_string(fine.a.rows()));
    }
    auto r = transpose(p);
    auto coarse = galerkin_product(r, fine.a, p);
    const bool stall = p.cols() >= p.rows();
    fine.p = std::move(p);
    fine.r = std::move(r);
    auto inv = inverse_diagonal(coarse);
    h.levels.push_back({std::move(coarse), std::move(inv), std::nullopt,
                        std::nullopt});
    if (stall) {
      h.stalled = true;
      h.warnings.push_back("coarsening stalled at level " +
                           std::to_string(level) + " (" +
                           std::to_string(h.levels[level].a.rows()) +
                           " -> " + std::to_string(h.levels.back().a.rows()) +
                           " unknowns); using it as the coarsest level");
      break;
    }
  }
  h.coarsest = DenseLu(h.levels.back().a);
  return h;
}

Hierarchy build_hierarchy(const CsrMatrix& a, const SolverConfig& cfg) {
  return build_hierarchy(a, cfg, ChoiceCoarsener(cfg.coarsener));
}

DenseVector v_cycle(const Hierarchy& h, std::size_t level,
                    std::span<const double> f, std::span<const double> v,
                    const SolverConfig& cfg) {
  if (level >= h.depth()) throw DimensionError("v_cycle: level out of range");
  const auto& lv = h.levels[level];
  if (f.size() != lv.a.rows() || v.size() != lv.a.rows()) {
    throw DimensionError("v_cycle: vector length does not match the level");
  }
  if (level + 1 == h.depth()) return h.coarsest.solve(f);

  DenseVector x(v.begin(), v.end());
  smooth_inplace(lv.a, lv.inv_diag, f, x, with_sweeps(cfg.smoother, cfg.pre_sweeps));

  const auto r = residual(lv.a, f, x);
  const auto rc = spmv(*lv.r, r);
  DenseVector ec;
  if (level + 2 == h.depth()) {
    ec = h.coarsest.solve(rc);
  } else {
    const DenseVector zero(rc.size(), 0.0);
    ec = v_cycle(h, level + 1, rc, zero, cfg);
  }
  const auto e = spmv(*lv.p, ec);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += e[i];

  if (level == 0 || cfg.post_smooth_all_levels) {
    smooth_inplace(lv.a, lv.inv_diag, f, x,
                   with_sweeps(cfg.smoother, cfg.post_sweeps));
  }
  return x;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxCycles: return "max_cycles";
    case SolveStatus::Diverged: return "diverged";
  }
  return "?";
}

std::string SolveReport::to_key_value() const {
  std::ostringstream ss;
  ss.precision(17);
  ss << "status=" << to_string(status) << '\n'
     << "converged=" << (converged ? "true" : "false") << '\n'
     << "iterations=" << iterations << '\n'
     << "initial_residual=" << initial_residual << '\n'
     << "final_residual="
     << (residual_history.empty() ? initial_residual : residual_history.back())
     << '\n'
     << "setup_seconds=" << setup_seconds << '\n'
     << "solve_seconds=" << solve_seconds << '\n'
     << "levels=" << join(level_sizes) << '\n'
     << "residual_history=" << join(residual_history) << '\n';
  for (const auto& w : warnings) ss << "warning=" << w << '\n';
  return ss.str();
}

std::string SolveReport::csv_header() {
  return "size,method,seed,iterations,converged,setup_seconds,solve_seconds";
}

std::string SolveReport::to_csv_row(std::size_t size, const std::string& method,
                                    const std::string& seed) const {
  std::ostringstream ss;
  ss << size << ',' << method << ',' << seed << ',' << iterations << ','
     << (converged ? "true" : "false") << ',' << setup_seconds << ','
     << solve_seconds;
  return ss.str();
}

SolveResult solve(const Hierarchy& h, std::span<const double> f,
                  std::span<const double> v0, const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& a = h.levels.front().a;
  if (f.size() != a.rows() || v0.size() != a.rows()) {
    throw DimensionError("solve: vector length does not match the matrix");
  }
  SolveResult out;
  auto& rep = out.report;
  rep.level_sizes = h.sizes();
  rep.warnings = h.warnings;
  out.solution.assign(v0.begin(), v0.end());

  double prev = inf_norm(residual(a, f, out.solution));
  rep.initial_residual = prev;
  std::size_t rising = 0;
  if (prev < cfg.tolerance) {
    rep.status = SolveStatus::Converged;
  }
  while (rep.status != SolveStatus::Converged &&
         rep.iterations < cfg.max_vcycles) {
    out.solution = v_cycle(h, 0, f, out.solution, cfg);
    const double res = inf_norm(residual(a, f, out.solution));
    rep.residual_history.push_back(res);
    ++rep.iterations;
    if (res < cfg.tolerance) {
      rep.status = SolveStatus::Converged;
      break;
    }
    rising = (res > prev || !std::isfinite(res)) ? rising + 1 : 0;
    if (!std::isfinite(res) || rising >= cfg.divergence_window) {
      rep.status = SolveStatus::Diverged;
      break;
    }
    prev = res;
  }
  if (rep.status != SolveStatus::Converged && rep.status != SolveStatus::Diverged) {
    rep.status = SolveStatus::MaxCycles;
  }
  rep.converged = rep.status == SolveStatus::Converged;
  rep.solve_seconds = seconds_since(t0);
  return out;
}

SolveResult solve(const CsrMatrix& a, std::span<const double> f,
                  std::span<const double> v0, const SolverConfig& cfg,
                  const Coarsener& coarsener) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const auto h = build_hierarchy(a, cfg, coarsener);
  const double setup = seconds_since(t0);
  auto out = solve(h, f, v0, cfg);
  out.report.setup_seconds = setup;
  return out;
}

SolveResult solve(const CsrMatrix& a, std::span<const double> f,
                  std::span<const double> v0, const SolverConfig& cfg) {
  return solve(a, f, v0, cfg, ChoiceCoarsener(cfg.coarsener));
}

}  // namespace glamg
