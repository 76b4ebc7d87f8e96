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

#ifndef GLAMG_ERROR_HPP
#define GLAMG_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace glamg {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree, or an index is out of range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: zero pivot, zero diagonal, singular system.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Embedding training could not run (for example an empty walk corpus).
class TrainingError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// File could not be opened or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace glamg

#endif  // GLAMG_ERROR_HPP
