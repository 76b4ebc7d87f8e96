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
#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "glamg/benchmark.hpp"
#include "glamg/error.hpp"

using namespace glamg;

namespace {

std::vector<std::string> lines_without_timings(const BenchmarkTable& t) {
  std::ostringstream out;
  write_benchmark_csv(out, t);
  std::istringstream in(out.str());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    // Keep size,method,seed,iterations,converged.
    std::size_t pos = 0;
    for (int k = 0; k < 5 && pos != std::string::npos; ++k) pos = line.find(',', pos + 1);
    lines.push_back(line.substr(0, pos));
  }
  return lines;
}

}  // namespace

TEST_CASE("one method and seed gives a data row and a median row") {
  BenchmarkSpec spec;
  spec.sizes = {1024};
  spec.methods = {CoarsenerKind::VanekAggregation};
  const auto t = run_benchmark(spec);
  REQUIRE(t.rows.size() == 2);
  CHECK_FALSE(t.rows[0].aggregate);
  CHECK(t.rows[0].size == 1024);
  CHECK(t.rows[0].method == "vanek");
  CHECK(t.rows[0].seed == "0");
  CHECK(t.rows[0].converged);
  CHECK(t.rows[1].aggregate);
  CHECK(t.rows[1].seed == "median");
  CHECK(t.median_iterations(1024, CoarsenerKind::VanekAggregation) == t.rows[0].iterations);

  std::ostringstream out;
  write_benchmark_csv(out, t);
  CHECK(out.str().rfind("size,method,seed,iterations,converged,setup_seconds,solve_seconds\n", 0) == 0);
}

TEST_CASE("Beck needs more iterations than Vanek and scales near-linearly") {
  BenchmarkSpec spec;
  spec.sizes = {1024, 2048, 4096};
  spec.methods = {CoarsenerKind::Beck, CoarsenerKind::VanekAggregation};
  const auto t = run_benchmark(spec);
  for (auto n : {1024u, 4096u}) {
    CHECK(t.median_iterations(n, CoarsenerKind::Beck) >
          t.median_iterations(n, CoarsenerKind::VanekAggregation));
  }
  // 2048 maps to the 45 x 45 grid.
  const double b1 = t.median_iterations(1024, CoarsenerKind::Beck);
  const double b2 = t.median_iterations(2025, CoarsenerKind::Beck);
  const double b4 = t.median_iterations(4096, CoarsenerKind::Beck);
  MESSAGE("Beck iterations " << b1 << " " << b2 << " " << b4);
  CHECK(b2 / b1 >= 1.5);
  CHECK(b2 / b1 <= 2.5);
  CHECK(b4 / b2 >= 1.5);
  CHECK(b4 / b2 <= 2.5);
}

TEST_CASE("benchmark rows are deterministic apart from timings") {
  BenchmarkSpec spec;
  spec.sizes = {400};
  spec.methods = {CoarsenerKind::GLCoarsener, CoarsenerKind::Beck};
  spec.seeds = {1, 2, 3};
  spec.base.coarsener.gl.embedding.dimension = 16;
  const auto a = run_benchmark(spec);
  const auto b = run_benchmark(spec);
  CHECK(a.rows.size() == 8);
  CHECK(lines_without_timings(a) == lines_without_timings(b));
  for (std::size_t k = 0; k < 4; ++k) CHECK(a.rows[k].method == "gl");
  CHECK(a.rows[3].aggregate);
}

TEST_CASE("failing cells become unconverged rows") {
  BenchmarkSpec spec;
  spec.sizes = {1024};
  spec.methods = {CoarsenerKind::VanekAggregation};
  spec.base.max_vcycles = 3;
  const auto t = run_benchmark(spec);
  CHECK_FALSE(t.rows[0].converged);
  CHECK(t.rows[0].iterations == 3.0);
  CHECK_FALSE(t.rows[1].converged);
}

TEST_CASE("benchmark spec from config") {
  std::istringstream in("sizes = 100, 400\nmethods = gl, beck\nseeds = 4,5\ntolerance = 1e-5\n"
                        "embedding_dimension = 8\n");
  const auto spec = benchmark_spec_from_config(parse_config(in));
  CHECK(spec.sizes == std::vector<std::size_t>{100, 400});
  CHECK(spec.methods == std::vector<CoarsenerKind>{CoarsenerKind::GLCoarsener, CoarsenerKind::Beck});
  CHECK(spec.seeds == std::vector<std::uint64_t>{4, 5});
  CHECK(spec.tolerance == 1e-5);
  CHECK(spec.base.coarsener.gl.embedding.dimension == 8);

  std::istringstream unknown("sizes = 100\nbogus = 1\n");
  CHECK_THROWS_AS(benchmark_spec_from_config(parse_config(unknown)), ConfigError);
  std::istringstream empty("sizes = \n");
  CHECK_THROWS_AS(benchmark_spec_from_config(parse_config(empty)), ConfigError);
}
