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

#ifndef GLAMG_MATRIX_MARKET_HPP
#define GLAMG_MATRIX_MARKET_HPP

#include <iosfwd>
#include <string>

#include "glamg/sparse.hpp"

namespace glamg {

/// Reads a Matrix Market coordinate file. Accepts `real`, `integer` and
/// `pattern` fields with `general` or `symmetric` symmetry; symmetric input
/// is expanded to both triangles. Errors carry the 1-based line number.
CsrMatrix read_matrix_market(std::istream& in);
CsrMatrix read_matrix_market(const std::string& path);

/// Writes "%%MatrixMarket matrix coordinate real general", 1-based, with
/// enough digits to round-trip every double.
void write_matrix_market(std::ostream& out, const CsrMatrix& a);
void write_matrix_market(const std::string& path, const CsrMatrix& a);

/// Dense vectors use the `array real general` (n x 1) layout. The reader also
/// accepts a coordinate n x 1 file.
DenseVector read_matrix_market_vector(std::istream& in);
DenseVector read_matrix_market_vector(const std::string& path);
void write_matrix_market_vector(std::ostream& out, const DenseVector& x);
void write_matrix_market_vector(const std::string& path, const DenseVector& x);

}  // namespace glamg

#endif  // GLAMG_MATRIX_MARKET_HPP
