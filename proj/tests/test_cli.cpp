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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "glamg/matrix_market.hpp"
#include "glamg/problems.hpp"

using glamg::cli::cli_main;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "glamg");
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve a Poisson problem with Vanek") {
  const auto r = run({"solve", "--poisson", "32", "32", "--method", "vanek", "--tol", "1e-4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("converged=true") != std::string::npos);
  CHECK(r.out.find("levels=1024,") != std::string::npos);
}

TEST_CASE("solve from files writes the solution") {
  const auto p = glamg::poisson_2d({6, 6, glamg::RhsKind::Ones});
  glamg::write_matrix_market("cli_a.mtx", p.a);
  glamg::write_matrix_market_vector("cli_f.mtx", p.f);
  const auto r = run({"solve", "--matrix", "cli_a.mtx", "--rhs", "cli_f.mtx", "--method", "beck",
                      "--out", "cli_x.mtx", "--report", "cli_report.txt"});
  CHECK(r.code == 0);
  const auto x = glamg::read_matrix_market_vector(std::string("cli_x.mtx"));
  CHECK(glamg::inf_norm(glamg::residual(p.a, p.f, x)) < 1e-4);
  CHECK(read_file("cli_report.txt").find("converged=true") != std::string::npos);
  for (const char* f : {"cli_a.mtx", "cli_f.mtx", "cli_x.mtx", "cli_report.txt"}) std::remove(f);
}

TEST_CASE("malformed Matrix Market input exits with 3") {
  write_file("cli_bad.mtx", "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n2 q 1\n");
  const auto r = run({"solve", "--matrix", "cli_bad.mtx"});
  CHECK(r.code == 3);
  CHECK(r.err.find("line 4") != std::string::npos);
  std::remove("cli_bad.mtx");
  CHECK(run({"solve", "--matrix", "/nonexistent/m.mtx"}).code == 3);
}

TEST_CASE("usage errors exit with 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"solve", "--poisson", "8", "8", "--method", "ruge"}).code == 1);
  CHECK(run({"solve"}).code == 1);
  write_file("cli_unknown.cfg", "no_such_key = 1\n");
  CHECK(run({"solve", "--poisson", "8", "8", "--config", "cli_unknown.cfg"}).code == 1);
  std::remove("cli_unknown.cfg");
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("non-convergence exits with 2") {
  const auto r = run({"solve", "--poisson", "32", "32", "--method", "vanek", "--max-cycles", "2"});
  CHECK(r.code == 2);
  CHECK(r.out.find("converged=false") != std::string::npos);
}

TEST_CASE("config file values and flag overrides") {
  write_file("cli_solver.cfg", "method = beck\ntolerance = 1e-2\n");
  const auto r = run({"solve", "--poisson", "16", "16", "--config", "cli_solver.cfg", "--tol", "1e-6"});
  CHECK(r.code == 0);
  const auto loose = run({"solve", "--poisson", "16", "16", "--config", "cli_solver.cfg"});
  CHECK(loose.code == 0);
  auto iterations = [](const std::string& s) {
    const auto at = s.find("iterations=");
    return std::stoi(s.substr(at + 11));
  };
  CHECK(iterations(r.out) > iterations(loose.out));
  std::remove("cli_solver.cfg");
}

TEST_CASE("bench with the default spec prints the CSV header") {
  const auto r = run({"bench"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("size,method,seed,iterations,converged,setup_seconds,solve_seconds\n", 0) == 0);
  CHECK(r.out.find("1024,beck,0,") != std::string::npos);
  CHECK(r.out.find("1024,vanek,median,") != std::string::npos);
  CHECK(r.out.find("1024,gl,0,") != std::string::npos);
}

TEST_CASE("bench writes to a file") {
  write_file("cli_bench.cfg", "sizes = 100\nmethods = vanek\nseeds = 1, 2\n");
  const auto r = run({"bench", "--config", "cli_bench.cfg", "--out", "cli_bench.csv"});
  CHECK(r.code == 0);
  const auto csv = read_file("cli_bench.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  std::remove("cli_bench.cfg");
  std::remove("cli_bench.csv");
}

TEST_CASE("coarsen writes the prolongation and debug dumps") {
  const auto r = run({"coarsen", "--poisson", "10", "10", "--method", "gl", "--seed", "3",
                      "--out", "cli_p.mtx", "--dump-corpus", "cli_walks.txt",
                      "--dump-embedding", "cli_emb.txt", "--dump-assignment", "cli_agg.txt"});
  CHECK(r.code == 0);
  const auto p = glamg::read_matrix_market(std::string("cli_p.mtx"));
  CHECK(p.rows() == 100);
  CHECK(p.cols() == 20);
  CHECK(read_file("cli_emb.txt").rfind("100 128\n", 0) == 0);
  const auto agg = read_file("cli_agg.txt");
  CHECK(std::count(agg.begin(), agg.end(), '\n') == 100);
  CHECK(!read_file("cli_walks.txt").empty());
  for (const char* f : {"cli_p.mtx", "cli_walks.txt", "cli_emb.txt", "cli_agg.txt"}) std::remove(f);

  const auto v = run({"coarsen", "--poisson", "10", "10", "--method", "vanek"});
  CHECK(v.code == 0);
  CHECK(v.out.find("%%MatrixMarket") != std::string::npos);
}
