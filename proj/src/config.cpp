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

#include "glamg/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <sstream>

#include "glamg/error.hpp"

namespace glamg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const ConfigValue& v,
                            const std::string& expected) {
  throw ConfigError((v.line ? "line " + std::to_string(v.line) + ": " : "") +
                    "key '" + key + "' expects " + expected + ", got '" +
                    v.value + "'");
}

std::size_t to_count(const std::string& key, const ConfigValue& v) {
  std::size_t out = 0;
  const auto* end = v.value.data() + v.value.size();
  const auto [p, ec] = std::from_chars(v.value.data(), end, out);
  if (ec != std::errc() || p != end) bad_value(key, v, "a non-negative integer");
  return out;
}

double to_real(const std::string& key, const ConfigValue& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v.value, &pos);
    if (pos == v.value.size()) return d;
  } catch (const std::exception&) {
  }
  bad_value(key, v, "a real number");
}

bool to_bool(const std::string& key, const ConfigValue& v) {
  if (v.value == "true" || v.value == "1" || v.value == "yes") return true;
  if (v.value == "false" || v.value == "0" || v.value == "no") return false;
  bad_value(key, v, "a boolean");
}

std::optional<std::size_t> to_auto_count(const std::string& key,
                                         const ConfigValue& v) {
  if (v.value == "auto") return std::nullopt;
  return to_count(key, v);
}

template <class Fn>
auto wrap_config_error(const std::string& key, const ConfigValue& v, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    bad_value(key, v, e.what());
  }
}

using Setter = std::function<void(SolverConfig&, const std::string&,
                                  const ConfigValue&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"pre_sweeps", [](auto& c, auto& k, auto& v) { c.pre_sweeps = to_count(k, v); }},
      {"post_sweeps", [](auto& c, auto& k, auto& v) { c.post_sweeps = to_count(k, v); }},
      {"post_smooth_all_levels",
       [](auto& c, auto& k, auto& v) { c.post_smooth_all_levels = to_bool(k, v); }},
      {"smoother",
       [](auto& c, auto& k, auto& v) {
         c.smoother.kind = wrap_config_error(k, v, [&] { return parse_smoother_kind(v.value); });
       }},
      {"smoother_omega", [](auto& c, auto& k, auto& v) { c.smoother.omega = to_real(k, v); }},
      {"coarsest_size", [](auto& c, auto& k, auto& v) { c.coarsest_size = to_count(k, v); }},
      {"max_vcycles", [](auto& c, auto& k, auto& v) { c.max_vcycles = to_count(k, v); }},
      {"tolerance", [](auto& c, auto& k, auto& v) { c.tolerance = to_real(k, v); }},
      {"divergence_window",
       [](auto& c, auto& k, auto& v) { c.divergence_window = to_count(k, v); }},
      {"method",
       [](auto& c, auto& k, auto& v) {
         c.coarsener.kind = wrap_config_error(k, v, [&] { return parse_coarsener_kind(v.value); });
       }},
      {"vanek_epsilon",
       [](auto& c, auto& k, auto& v) { c.coarsener.vanek_epsilon = to_real(k, v); }},
      {"prolongation_smoothing",
       [](auto& c, auto& k, auto& v) {
         if (v.value == "none") {
           c.coarsener.prolongation_smoothing.reset();
           return;
         }
         SmootherConfig s = c.coarsener.prolongation_smoothing.value_or(SmootherConfig{});
         s.kind = wrap_config_error(k, v, [&] { return parse_smoother_kind(v.value); });
         c.coarsener.prolongation_smoothing = s;
       }},
      {"prolongation_omega",
       [](auto& c, auto& k, auto& v) {
         SmootherConfig s = c.coarsener.prolongation_smoothing.value_or(
             SmootherConfig{SmootherKind::DampedJacobi});
         s.omega = to_real(k, v);
         c.coarsener.prolongation_smoothing = s;
       }},
      {"walks_per_node",
       [](auto& c, auto& k, auto& v) { c.coarsener.gl.walk.walks_per_node = to_auto_count(k, v); }},
      {"walk_length",
       [](auto& c, auto& k, auto& v) { c.coarsener.gl.walk.walk_length = to_count(k, v); }},
      {"return_p", [](auto& c, auto& k, auto& v) { c.coarsener.gl.walk.return_p = to_real(k, v); }},
      {"in_out_q", [](auto& c, auto& k, auto& v) { c.coarsener.gl.walk.in_out_q = to_real(k, v); }},
      {"embedding_dimension",
       [](auto& c, auto& k, auto& v) { c.coarsener.gl.embedding.dimension = to_count(k, v); }},
      {"window", [](auto& c, auto& k, auto& v) { c.coarsener.gl.embedding.window = to_count(k, v); }},
      {"negatives",
       [](auto& c, auto& k, auto& v) { c.coarsener.gl.embedding.negatives = to_count(k, v); }},
      {"epochs", [](auto& c, auto& k, auto& v) { c.coarsener.gl.embedding.epochs = to_count(k, v); }},
      {"lr_initial",
       [](auto& c, auto& k, auto& v) { c.coarsener.gl.embedding.lr_initial = to_real(k, v); }},
      {"lr_final",
       [](auto& c, auto& k, auto& v) { c.coarsener.gl.embedding.lr_final = to_real(k, v); }},
      {"parallel_training",
       [](auto& c, auto& k, auto& v) { c.coarsener.gl.embedding.parallel = to_bool(k, v); }},
      {"cluster_ratio",
       [](auto& c, auto& k, auto& v) { c.coarsener.gl.cluster_ratio = to_real(k, v); }},
      {"batch_ratio", [](auto& c, auto& k, auto& v) { c.coarsener.gl.batch_ratio = to_real(k, v); }},
      {"kmeans_max_iters",
       [](auto& c, auto& k, auto& v) { c.coarsener.gl.cluster.max_iters = to_auto_count(k, v); }},
      {"centroid_tol",
       [](auto& c, auto& k, auto& v) { c.coarsener.gl.cluster.centroid_tol = to_real(k, v); }},
      {"seed",
       [](auto& c, auto& k, auto& v) {
         const auto s = to_count(k, v);
         c.coarsener.gl.walk.seed = s;
         c.coarsener.gl.embedding.seed = s;
         c.coarsener.gl.cluster.seed = s;
       }},
  };
  return table;
}

}  // namespace

ConfigMap parse_config(std::istream& in) {
  ConfigMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", line_no);
    }
    auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no);
    map[key] = {trim(line.substr(eq + 1)), line_no};
  }
  return map;
}

ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  return parse_config(in);
}

void apply_solver_config(ConfigMap& map, SolverConfig& cfg) {
  const auto& table = setters();
  for (auto it = map.begin(); it != map.end();) {
    const auto s = table.find(it->first);
    if (s == table.end()) {
      ++it;
      continue;
    }
    s->second(cfg, it->first, it->second);
    it = map.erase(it);
  }
  cfg.validate();
}

void reject_unknown_keys(const ConfigMap& map) {
  if (map.empty()) return;
  const auto& [key, v] = *map.begin();
  throw ConfigError((v.line ? "line " + std::to_string(v.line) + ": " : "") +
                    "unknown config key '" + key + "'");
}

std::string format_solver_config(const SolverConfig& c) {
  const auto& gl = c.coarsener.gl;
  std::ostringstream ss;
  ss.precision(17);
  ss << "pre_sweeps = " << c.pre_sweeps << '\n'
     << "post_sweeps = " << c.post_sweeps << '\n'
     << "post_smooth_all_levels = " << (c.post_smooth_all_levels ? "true" : "false") << '\n'
     << "smoother = " << to_string(c.smoother.kind) << '\n'
     << "smoother_omega = " << c.smoother.omega << '\n'
     << "coarsest_size = " << c.coarsest_size << '\n'
     << "max_vcycles = " << c.max_vcycles << '\n'
     << "tolerance = " << c.tolerance << '\n'
     << "divergence_window = " << c.divergence_window << '\n'
     << "method = " << to_string(c.coarsener.kind) << '\n'
     << "vanek_epsilon = " << c.coarsener.vanek_epsilon << '\n'
     << "prolongation_smoothing = "
     << (c.coarsener.prolongation_smoothing
             ? std::string(to_string(c.coarsener.prolongation_smoothing->kind))
             : std::string("none"))
     << '\n';
  if (c.coarsener.prolongation_smoothing) {
    ss << "prolongation_omega = " << c.coarsener.prolongation_smoothing->omega << '\n';
  }
  ss << "walks_per_node = "
     << (gl.walk.walks_per_node ? std::to_string(*gl.walk.walks_per_node) : "auto") << '\n'
     << "walk_length = " << gl.walk.walk_length << '\n'
     << "return_p = " << gl.walk.return_p << '\n'
     << "in_out_q = " << gl.walk.in_out_q << '\n'
     << "embedding_dimension = " << gl.embedding.dimension << '\n'
     << "window = " << gl.embedding.window << '\n'
     << "negatives = " << gl.embedding.negatives << '\n'
     << "epochs = " << gl.embedding.epochs << '\n'
     << "lr_initial = " << gl.embedding.lr_initial << '\n'
     << "lr_final = " << gl.embedding.lr_final << '\n'
     << "parallel_training = " << (gl.embedding.parallel ? "true" : "false") << '\n'
     << "cluster_ratio = " << gl.cluster_ratio << '\n'
     << "batch_ratio = " << gl.batch_ratio << '\n'
     << "kmeans_max_iters = "
     << (gl.cluster.max_iters ? std::to_string(*gl.cluster.max_iters) : "auto") << '\n'
     << "centroid_tol = " << gl.cluster.centroid_tol << '\n'
     << "seed = " << gl.walk.seed << '\n';
  return ss.str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace glamg
