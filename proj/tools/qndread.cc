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

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <map>

#include "qnd/commands.h"
#include "qnd/dynamics.h"
#include "qnd/output.h"

namespace {

struct Flags {
    std::string config_path;
    std::string out_dir;
    std::string format;
    std::string state;
    bool refine_probe = false;
    std::optional<uint64_t> seed;
};

void add_common_flags(CLI::App *cmd, Flags &flags) {
    cmd->add_option("--config", flags.config_path, "YAML configuration file (built-in default when omitted)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", flags.out_dir, "Output directory (overrides output.directory)");
    cmd->add_option("--format", flags.format, "Table format (overrides output.format)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--refine-probe", flags.refine_probe, "Drive at the refined |t_e|^2 maximum instead of omega_r + delta_L");
    cmd->add_option("--seed", flags.seed, "Monte Carlo seed (overrides monte_carlo.seed)");
}

int run(const std::string &name, const Flags &flags) {
    using namespace qnd;
    CommandOptions opts{
        .config = flags.config_path.empty() ? parse_config(kDefaultConfigYaml) : load_config(flags.config_path),
    };
    for (const auto &w : opts.config.warnings) {
        std::cerr << "warning: " << w.message << "\n";
    }
    opts.out_dir = flags.out_dir.empty() ? opts.config.output_directory : flags.out_dir;
    opts.format = flags.format.empty() ? opts.config.format : parse_format(flags.format);
    opts.refine_probe = flags.refine_probe;
    opts.seed = flags.seed;
    if (!flags.state.empty()) {
        opts.state = parse_qubit_state(flags.state);
    }

    static const std::map<std::string, std::function<CommandResult(const CommandOptions &)>> commands = {
        {"spectrum", run_spectrum}, {"histogram", run_histogram},       {"fidelity", run_fidelity},
        {"map", run_map},           {"oracle-check", run_oracle_check},
    };
    CommandResult result = commands.at(name)(opts);
    std::cout << result.summary;
    for (const auto &f : result.files) {
        std::cout << "wrote " << f.string() << "\n";
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Single-shot QND readout model for a dispersively coupled qubit"};
    app.set_version_flag("--version", std::string(qnd::kToolName) + " " + qnd::kToolVersion);
    app.require_subcommand(1);

    Flags flags;
    const std::pair<const char *, const char *> subcommands[] = {
        {"spectrum", "Transmission spectra |t|^2 for both qubit states"},
        {"histogram", "Conditional photon-count distributions at the readout point"},
        {"fidelity", "Single-shot fidelity with the optimal threshold"},
        {"map", "Fidelity over the kappa x probe power grid"},
        {"oracle-check", "Compare the closed-form transmission with the mean-field ODE"},
    };
    for (auto [name, help] : subcommands) {
        CLI::App *cmd = app.add_subcommand(name, help);
        add_common_flags(cmd, flags);
        if (std::string(name) == "spectrum") {
            cmd->add_option("--state", flags.state, "Only one qubit state")->check(CLI::IsMember({"g", "e"}));
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? qnd::kExitOk : qnd::kExitUsage;
    }

    std::string name = app.get_subcommands().front()->get_name();
    try {
        return run(name, flags);
    } catch (const qnd::ConfigError &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return qnd::kExitUsage;
    } catch (const qnd::IntegrationFailure &ex) {
        std::cerr << "numerical error: " << ex.what() << "\n";
        return qnd::kExitNumerical;
    } catch (const std::domain_error &ex) {
        std::cerr << "numerical error: " << ex.what() << "\n";
        return qnd::kExitNumerical;
    } catch (const std::invalid_argument &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return qnd::kExitUsage;
    } catch (const std::exception &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return qnd::kExitUsage;
    }
}
