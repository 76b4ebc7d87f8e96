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

#include "glamg/benchmark.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "glamg/error.hpp"
#include "glamg/problems.hpp"

namespace glamg {

namespace {

double median(std::vector<double> xs) {
  if (xs.empty()) return 0.0;
  std::sort(xs.begin(), xs.end());
  const auto m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

template <class T>
T parse_number(const std::string& s, const char* what) {
  T v{};
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) {
    throw ConfigError(std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

void BenchmarkSpec::validate() const {
  if (sizes.empty() || methods.empty() || seeds.empty()) {
    throw ConfigError("benchmark sizes, methods and seeds must be non-empty");
  }
  if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
}

BenchmarkSpec benchmark_spec_from_config(ConfigMap map) {
  BenchmarkSpec spec;
  if (auto it = map.find("sizes"); it != map.end()) {
    spec.sizes.clear();
    for (const auto& s : split_list(it->second.value)) {
      spec.sizes.push_back(parse_number<std::size_t>(s, "size"));
    }
    map.erase(it);
  }
  if (auto it = map.find("methods"); it != map.end()) {
    spec.methods.clear();
    for (const auto& s : split_list(it->second.value)) {
      spec.methods.push_back(parse_coarsener_kind(s));
    }
    map.erase(it);
  }
  if (auto it = map.find("seeds"); it != map.end()) {
    spec.seeds.clear();
    for (const auto& s : split_list(it->second.value)) {
      spec.seeds.push_back(parse_number<std::uint64_t>(s, "seed"));
    }
    map.erase(it);
  }
  apply_solver_config(map, spec.base);
  spec.tolerance = spec.base.tolerance;
  reject_unknown_keys(map);
  spec.validate();
  return spec;
}

double BenchmarkTable::median_iterations(std::size_t size,
                                         CoarsenerKind method) const {
  const auto name = std::string(to_string(method));
  for (const auto& r : rows) {
    if (r.aggregate && r.size == size && r.method == name) return r.iterations;
  }
  throw DimensionError("no benchmark rows for size " + std::to_string(size) +
                       " and method " + name);
}

BenchmarkTable run_benchmark(const BenchmarkSpec& spec) {
  spec.validate();
  BenchmarkTable table;
  for (auto size : spec.sizes) {
    const auto side = nearest_square_side(size);
    const auto problem = poisson_2d({side, side, RhsKind::Ones});
    const auto n = problem.a.rows();
    const DenseVector v0(n, 0.0);

    for (auto method : spec.methods) {
      std::vector<double> its, setup, solve_t;
      bool all_converged = true;
      for (auto seed : spec.seeds) {
        SolverConfig cfg = spec.base;
        cfg.tolerance = spec.tolerance;
        cfg.coarsener.kind = method;
        cfg.coarsener.gl.walk.seed = seed;
        cfg.coarsener.gl.embedding.seed = seed;
        cfg.coarsener.gl.cluster.seed = seed;

        BenchmarkRow row;
        row.size = n;
        row.method = std::string(to_string(method));
        row.seed = std::to_string(seed);
        try {
          const auto res = solve(problem.a, problem.f, v0, cfg);
          row.iterations = static_cast<double>(res.report.iterations);
          row.converged = res.report.converged;
          row.setup_seconds = res.report.setup_seconds;
          row.solve_seconds = res.report.solve_seconds;
        } catch (const std::exception& e) {
          row.converged = false;
          row.error = e.what();
        }
        all_converged = all_converged && row.converged;
        its.push_back(row.iterations);
        setup.push_back(row.setup_seconds);
        solve_t.push_back(row.solve_seconds);
        table.rows.push_back(std::move(row));
      }
      BenchmarkRow agg;
      agg.size = n;
      agg.method = std::string(to_string(method));
      agg.seed = "median";
      agg.aggregate = true;
      agg.iterations = median(its);
      agg.converged = all_converged;
      agg.setup_seconds = median(setup);
      agg.solve_seconds = median(solve_t);
      table.rows.push_back(std::move(agg));
    }
  }
  return table;
}

void write_benchmark_csv(std::ostream& out, const BenchmarkTable& table) {
  out << SolveReport::csv_header() << '\n';
  for (const auto& r : table.rows) {
    out << r.size << ',' << r.method << ',' << r.seed << ',' << r.iterations
        << ',' << (r.converged ? "true" : "false") << ',' << r.setup_seconds
        << ',' << r.solve_seconds << '\n';
  }
}

}  // namespace glamg
