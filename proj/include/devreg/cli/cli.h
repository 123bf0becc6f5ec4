// Copyright 2026 The devreg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The devreg command-line interface. Exit codes are a stable contract:
// 0 success, 1 domain rejection (condition, verification, integrity),
// 2 usage or configuration error.

#ifndef DEVREG_CLI_CLI_H_
#define DEVREG_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace devreg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitUsage = 2;

// Workspace root override when --workspace is absent.
inline constexpr const char* kWorkspaceEnv = "DEVREG_WORKSPACE";

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace devreg::cli

#endif  // DEVREG_CLI_CLI_H_
