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

#ifndef GLAMG_TOOLS_CLI_HPP
#define GLAMG_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace glamg::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNotConverged = 2,
  kIoError = 3,
};

/// Entry point of the `glamg` tool; `args[0]` is the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace glamg::cli

#endif  // GLAMG_TOOLS_CLI_HPP
