// Copyright 2026 The diamond-qnd Authors
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

#ifndef QND_COMMANDS_H
#define QND_COMMANDS_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qnd/config.h"
#include "qnd/transmission.h"

namespace qnd {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitNumerical = 2,
};

struct CommandOptions {
    RunConfig config;
    std::filesystem::path out_dir{};
    OutputFormat format = OutputFormat::Csv;
    bool refine_probe = false;
    std::optional<uint64_t> seed{};  // overrides monte_carlo.seed
    std::optional<QubitState> state{};  // spectrum only; both when unset
};

struct CommandResult {
    int exit_code = kExitOk;
    std::vector<std::filesystem::path> files;
    std::string summary;  // one or two human-readable lines for stdout
};

CommandResult run_spectrum(const CommandOptions &opts);
CommandResult run_histogram(const CommandOptions &opts);
CommandResult run_fidelity(const CommandOptions &opts);
CommandResult run_map(const CommandOptions &opts);
CommandResult run_oracle_check(const CommandOptions &opts);

}  // namespace qnd

#endif
