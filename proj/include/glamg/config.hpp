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

#ifndef GLAMG_CONFIG_HPP
#define GLAMG_CONFIG_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "glamg/amg.hpp"

namespace glamg {

struct ConfigValue {
  std::string value;
  std::size_t line = 0;
};

/// Flat `key = value` text; '#' starts a comment. Later keys win.
using ConfigMap = std::map<std::string, ConfigValue>;

ConfigMap parse_config(std::istream& in);
ConfigMap parse_config_file(const std::string& path);

/// Applies every key it recognizes and erases it from `map`. Throws
/// ConfigError on a malformed value or an invalid resulting configuration.
/// `seed` sets the walk, embedding and clustering seeds together.
void apply_solver_config(ConfigMap& map, SolverConfig& cfg);

/// Throws ConfigError naming the first leftover key.
void reject_unknown_keys(const ConfigMap& map);

/// Every solver key with its current value, in parseable form.
std::string format_solver_config(const SolverConfig& cfg);

/// Comma-separated list parsing helpers.
std::vector<std::string> split_list(const std::string& s);

}  // namespace glamg

#endif  // GLAMG_CONFIG_HPP
