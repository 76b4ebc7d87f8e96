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

#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "glamg/amg.hpp"
#include "glamg/benchmark.hpp"
#include "glamg/config.hpp"
#include "glamg/error.hpp"
#include "glamg/matrix_market.hpp"
#include "glamg/problems.hpp"

namespace glamg::cli {

namespace {

struct ProblemArgs {
  std::string matrix;
  std::vector<std::size_t> poisson;
  std::string rhs_file;
  std::string rhs_kind = "ones";
};

struct SolverArgs {
  std::string config;
  std::optional<std::string> method;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_cycles;
};

void add_problem_options(CLI::App& cmd, ProblemArgs& p) {
  auto* m = cmd.add_option("--matrix,-m", p.matrix, "Matrix Market input");
  auto* g = cmd.add_option("--poisson", p.poisson,
                           "Generate the 2-D Poisson problem on NX NY points")
                ->expected(2);
  m->excludes(g);
}

void add_solver_options(CLI::App& cmd, SolverArgs& s) {
  cmd.add_option("--config,-c", s.config, "key=value configuration file");
  cmd.add_option("--method", s.method, "gl, vanek or beck");
  cmd.add_option("--tol", s.tol, "Residual infinity-norm tolerance");
  cmd.add_option("--seed", s.seed, "Seed for walks, embedding and clustering");
  cmd.add_option("--max-cycles", s.max_cycles, "Maximum number of V-cycles");
}

SolverConfig solver_config(const SolverArgs& s) {
  SolverConfig cfg;
  if (!s.config.empty()) {
    auto map = parse_config_file(s.config);
    apply_solver_config(map, cfg);
    reject_unknown_keys(map);
  }
  if (s.method) cfg.coarsener.kind = parse_coarsener_kind(*s.method);
  if (s.tol) cfg.tolerance = *s.tol;
  if (s.seed) {
    cfg.coarsener.gl.walk.seed = *s.seed;
    cfg.coarsener.gl.embedding.seed = *s.seed;
    cfg.coarsener.gl.cluster.seed = *s.seed;
  }
  if (s.max_cycles) cfg.max_vcycles = *s.max_cycles;
  cfg.validate();
  return cfg;
}

PoissonProblem load_problem(const ProblemArgs& p) {
  if (!p.poisson.empty()) {
    return poisson_2d({p.poisson[0], p.poisson[1], parse_rhs_kind(p.rhs_kind)});
  }
  if (p.matrix.empty()) {
    throw ConfigError("one of --matrix or --poisson is required");
  }
  PoissonProblem prob;
  prob.a = read_matrix_market(p.matrix);
  if (!prob.a.square()) throw ConfigError("matrix must be square");
  if (!p.rhs_file.empty()) {
    prob.f = read_matrix_market_vector(p.rhs_file);
    if (prob.f.size() != prob.a.rows()) {
      throw ConfigError("right-hand side length does not match the matrix");
    }
  } else if (p.rhs_kind == "zero") {
    prob.f.assign(prob.a.rows(), 0.0);
  } else if (p.rhs_kind == "ones") {
    prob.f.assign(prob.a.rows(), 1.0);
  } else {
    throw ConfigError("--rhs-kind '" + p.rhs_kind +
                      "' needs --poisson; use zero or ones with --matrix");
  }
  return prob;
}

std::ofstream open_file(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  return f;
}

int run_solve(const ProblemArgs& p, const SolverArgs& s,
              const std::string& solution_out, const std::string& report_out,
              std::ostream& out) {
  const auto cfg = solver_config(s);
  const auto prob = load_problem(p);
  const DenseVector v0(prob.a.rows(), 0.0);
  const auto res = solve(prob.a, prob.f, v0, cfg);
  if (!solution_out.empty()) {
    write_matrix_market_vector(solution_out, res.solution);
  }
  const auto report = res.report.to_key_value();
  if (!report_out.empty()) {
    auto f = open_file(report_out);
    f << report;
  }
  out << report;
  return res.report.converged ? kSuccess : kNotConverged;
}

int run_bench(const std::string& config, const std::string& csv_out,
              std::ostream& out) {
  const auto spec = benchmark_spec_from_config(
      config.empty() ? ConfigMap{} : parse_config_file(config));
  const auto table = run_benchmark(spec);
  if (csv_out.empty()) {
    write_benchmark_csv(out, table);
  } else {
    auto f = open_file(csv_out);
    write_benchmark_csv(f, table);
  }
  return kSuccess;
}

struct DumpArgs {
  std::string corpus;
  std::string embedding;
  std::string assignment;
};

int run_coarsen(const ProblemArgs& p, const SolverArgs& s,
                const std::string& p_out, const DumpArgs& dumps,
                std::ostream& out) {
  const auto cfg = solver_config(s);
  const auto prob = load_problem(p);
  const auto& a = prob.a;

  const bool debug = !dumps.corpus.empty() || !dumps.embedding.empty() ||
                     !dumps.assignment.empty();
  if (debug && cfg.coarsener.kind != CoarsenerKind::GLCoarsener) {
    throw ConfigError("--dump-* options need --method gl");
  }
  CsrMatrix prolongation;
  if (debug) {
    // Same stages as gl_coarsen, with the intermediates written out.
    const auto& gl = cfg.coarsener.gl;
    WalkConfig walk = gl.walk;
    walk.seed = CounterRng(gl.walk.seed).split(0)();
    const auto corpus = generate_walks(graph_from_matrix(a), walk);
    if (!dumps.corpus.empty()) {
      auto f = open_file(dumps.corpus);
      write_corpus(f, corpus);
    }
    const auto agg = gl_aggregates(a, gl, 0);
    if (!dumps.embedding.empty()) {
      EmbeddingConfig e = gl.embedding;
      e.seed = CounterRng(gl.embedding.seed).split(0)();
      auto f = open_file(dumps.embedding);
      write_embedding(f, train_embedding(corpus, a.rows(), e));
    }
    if (!dumps.assignment.empty()) {
      auto f = open_file(dumps.assignment);
      write_assignment(f, agg.assignment);
    }
    prolongation = prolongation_from_aggregates(agg);
    if (cfg.coarsener.prolongation_smoothing) {
      prolongation =
          smooth_prolongation(a, prolongation, *cfg.coarsener.prolongation_smoothing);
    }
  } else {
    prolongation = ChoiceCoarsener(cfg.coarsener).prolongation(a, 0);
  }
  if (p_out.empty()) {
    write_matrix_market(out, prolongation);
  } else {
    write_matrix_market(p_out, prolongation);
    out << "rows=" << prolongation.rows() << "\ncols=" << prolongation.cols()
        << "\nnnz=" << prolongation.nnz() << '\n';
  }
  return kSuccess;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Algebraic multigrid with learned aggregation"};
  app.require_subcommand(1);

  ProblemArgs problem;
  SolverArgs solver;
  std::string solution_out, report_out, csv_out, bench_config, p_out;
  DumpArgs dumps;

  auto* solve_cmd = app.add_subcommand("solve", "Solve A u = f with AMG V-cycles");
  add_problem_options(*solve_cmd, problem);
  add_solver_options(*solve_cmd, solver);
  solve_cmd->add_option("--rhs", problem.rhs_file, "Right-hand side (Matrix Market)");
  solve_cmd->add_option("--rhs-kind", problem.rhs_kind, "zero, ones or sin")
      ->check(CLI::IsMember({"zero", "ones", "sin"}));
  solve_cmd->add_option("--out,-o", solution_out, "Solution file (Matrix Market array)");
  solve_cmd->add_option("--report", report_out, "Write the key=value report here too");

  auto* bench_cmd = app.add_subcommand("bench", "Run the Poisson benchmark sweep");
  bench_cmd->add_option("--config,-c", bench_config, "Benchmark spec (key=value)");
  bench_cmd->add_option("--out,-o", csv_out, "CSV output file (default stdout)");

  auto* coarsen_cmd = app.add_subcommand("coarsen", "Write the prolongation of one level");
  add_problem_options(*coarsen_cmd, problem);
  add_solver_options(*coarsen_cmd, solver);
  coarsen_cmd->add_option("--out,-o", p_out, "Prolongation output (Matrix Market)");
  coarsen_cmd->add_option("--dump-corpus", dumps.corpus, "Write the walk corpus");
  coarsen_cmd->add_option("--dump-embedding", dumps.embedding, "Write node vectors");
  coarsen_cmd->add_option("--dump-assignment", dumps.assignment, "Write node clusters");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(problem, solver, solution_out, report_out, out);
    if (*bench_cmd) return run_bench(bench_config, csv_out, out);
    if (*coarsen_cmd) return run_coarsen(problem, solver, p_out, dumps, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kIoError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "solver error: " << e.what() << '\n';
    return kNotConverged;
  }
  return kUsage;
}

}  // namespace glamg::cli
