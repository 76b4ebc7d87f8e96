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

#include "glamg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "glamg/error.hpp"

namespace glamg {

namespace {

struct Header {
  bool coordinate = true;
  bool pattern = false;
  bool symmetric = false;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  Header header() {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError("empty file", 1);
    ++line_no_;
    std::istringstream ss(line);
    std::string banner, object, format, field, symmetry;
    ss >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
      throw ParseError("missing %%MatrixMarket matrix banner", line_no_);
    }
    Header h;
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (format == "array") {
      h.coordinate = false;
    } else if (format != "coordinate") {
      throw ParseError("unsupported format '" + format + "'", line_no_);
    }
    if (field == "pattern" && h.coordinate) {
      h.pattern = true;
    } else if (field != "real" && field != "integer" && field != "double") {
      throw ParseError("unsupported field '" + field + "'", line_no_);
    }
    if (symmetry == "symmetric") {
      h.symmetric = true;
    } else if (symmetry != "general") {
      throw ParseError("unsupported symmetry '" + symmetry + "'", line_no_);
    }
    return h;
  }

  /// Next non-comment, non-blank line split into tokens; false at EOF.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.front() == '%') continue;
      if (blank(line)) continue;
      tokens.clear();
      std::istringstream ss(line);
      for (std::string t; ss >> t;) tokens.push_back(t);
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_no_; }

  std::size_t to_index(const std::string& s) const {
    std::size_t v = 0;
    const auto* end = s.data() + s.size();
    const auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end) {
      throw ParseError("expected a non-negative integer, got '" + s + "'",
                       line_no_);
    }
    return v;
  }

  double to_real(const std::string& s) const {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("expected a real number, got '" + s + "'", line_no_);
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

CsrMatrix read_coordinate(Reader& rd, const Header& h) {
  std::vector<std::string> tok;
  if (!rd.next(tok)) throw ParseError("missing size line", rd.line());
  if (tok.size() != 3) {
    throw ParseError("size line must be 'rows cols nnz'", rd.line());
  }
  const auto rows = rd.to_index(tok[0]);
  const auto cols = rd.to_index(tok[1]);
  const auto nnz = rd.to_index(tok[2]);
  if (h.symmetric && rows != cols) {
    throw ParseError("symmetric matrix must be square", rd.line());
  }

  std::vector<Triplet> entries;
  entries.reserve(h.symmetric ? 2 * nnz : nnz);
  const std::size_t want = h.pattern ? 2 : 3;
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!rd.next(tok)) {
      throw ParseError("expected " + std::to_string(nnz) + " entries, found " +
                           std::to_string(k),
                       rd.line());
    }
    if (tok.size() != want) {
      throw ParseError("entry must have " + std::to_string(want) + " fields",
                       rd.line());
    }
    const auto i = rd.to_index(tok[0]);
    const auto j = rd.to_index(tok[1]);
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw ParseError("index out of range", rd.line());
    }
    const double v = h.pattern ? 1.0 : rd.to_real(tok[2]);
    entries.push_back({i - 1, j - 1, v});
    if (h.symmetric && i != j) entries.push_back({j - 1, i - 1, v});
  }
  if (rd.next(tok)) throw ParseError("trailing data after entries", rd.line());
  return csr_from_triplets(rows, cols, entries);
}

void write_real(std::ostream& out, double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, p - buf);
}

}  // namespace

CsrMatrix read_matrix_market(std::istream& in) {
  Reader rd(in);
  const auto h = rd.header();
  if (!h.coordinate) {
    throw ParseError("expected coordinate format for a sparse matrix", 1);
  }
  return read_coordinate(rd, h);
}

CsrMatrix read_matrix_market(const std::string& path) {
  auto in = open_in(path);
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto r = a.row(i);
    for (std::size_t k = 0; k < r.size(); ++k) {
      out << i + 1 << ' ' << r.cols[k] + 1 << ' ';
      write_real(out, r.values[k]);
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed");
}

void write_matrix_market(const std::string& path, const CsrMatrix& a) {
  auto out = open_out(path);
  write_matrix_market(out, a);
}

DenseVector read_matrix_market_vector(std::istream& in) {
  Reader rd(in);
  const auto h = rd.header();
  if (h.coordinate) {
    const auto m = read_coordinate(rd, h);
    if (m.cols() != 1) throw ParseError("vector must have one column", 0);
    DenseVector x(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) x[i] = m.at(i, 0);
    return x;
  }
  std::vector<std::string> tok;
  if (!rd.next(tok) || tok.size() != 2) {
    throw ParseError("array size line must be 'rows cols'", rd.line());
  }
  const auto rows = rd.to_index(tok[0]);
  if (rd.to_index(tok[1]) != 1) {
    throw ParseError("vector must have one column", rd.line());
  }
  DenseVector x;
  x.reserve(rows);
  while (rd.next(tok)) {
    for (const auto& t : tok) x.push_back(rd.to_real(t));
  }
  if (x.size() != rows) {
    throw ParseError("expected " + std::to_string(rows) + " values, found " +
                         std::to_string(x.size()),
                     rd.line());
  }
  return x;
}

DenseVector read_matrix_market_vector(const std::string& path) {
  auto in = open_in(path);
  return read_matrix_market_vector(in);
}

void write_matrix_market_vector(std::ostream& out, const DenseVector& x) {
  out << "%%MatrixMarket matrix array real general\n";
  out << x.size() << " 1\n";
  for (double v : x) {
    write_real(out, v);
    out << '\n';
  }
  if (!out) throw IoError("write failed");
}

void write_matrix_market_vector(const std::string& path, const DenseVector& x) {
  auto out = open_out(path);
  write_matrix_market_vector(out, x);
}

}  // namespace glamg
