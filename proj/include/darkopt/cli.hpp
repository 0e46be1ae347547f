// Copyright 2026 The darkopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DARKOPT_CLI_HPP
#define DARKOPT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace darkopt {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `darkopt` tool. `args` excludes the program name.
///
/// Reports go to `out` (JSON by default, `--format text` for a flattened
/// rendering); diagnostics go to `err`. Returns 0 on success, 1 when a module
/// rejects its input or a file cannot be read, 2 on usage errors.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace darkopt

#endif
