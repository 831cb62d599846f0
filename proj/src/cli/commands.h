// Copyright 2026 The neradapt Authors
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

#ifndef NERADAPT_CLI_COMMANDS_H_
#define NERADAPT_CLI_COMMANDS_H_

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "cli/config.h"
#include "neradapt/mlm_bridge.h"

namespace neradapt::cli {

enum ExitCode {
  kExitOk = 0,
  kExitValidation = 1,
  kExitIo = 2,
  kExitBackend = 3,
};

// Environment variables consulted when the config leaves the backend open.
inline constexpr char kTransportEnv[] = "NERADAPT_MLM_TRANSPORT";
inline constexpr char kCommandEnv[] = "NERADAPT_MLM_COMMAND";
inline constexpr char kAddressEnv[] = "NERADAPT_MLM_ADDRESS";

// Transport resolution: config "transport", then $NERADAPT_MLM_TRANSPORT,
// then whatever the config provides (mock script, command, address).
std::unique_ptr<MlmBackend> MakeBackend(const BackendSettings& settings);

// Entry point of the `neradapt` tool. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace neradapt::cli

#endif  // NERADAPT_CLI_COMMANDS_H_
