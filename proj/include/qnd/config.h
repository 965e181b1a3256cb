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

#ifndef QND_CONFIG_H
#define QND_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnd/device.h"
#include "qnd/photostatistics.h"

namespace qnd {

/// Bad or unknown configuration content. The message names the offending
/// key path and its line.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

/// Grid along one sweep axis, already converted to internal units.
struct AxisSpec {
    double min;
    double max;
    size_t points;
    bool log_spacing;

    std::vector<double> values() const;
};

struct SpectrumSpec {
    double span = 0.0;  // rad/s, grid covers omega_r +- span
    size_t points = 801;
    bool offsets = true;  // report frequencies relative to omega_r
};

struct OracleSpec {
    double span = 0.0;  // rad/s
    size_t points = 201;
    double drive_fraction = 1e-4;  // p / p_s at every grid point
    double tolerance = 1e-3;
    double ode_tol = 1e-9;
};

struct MonteCarloSpec {
    uint64_t samples = 0;
    uint64_t seed = 12345;
};

/// Everything a CLI run needs, in internal units (rad/s, photons/s, s, K).
///
/// File units: frequencies in cyclic MHz (carrier in GHz), powers in
/// photons/ns, times in ns, temperatures in K, junction parameters in SI.
struct RunConfig {
    CouplingSet couplings;
    std::optional<JunctionCircuit> junction{};
    std::vector<RegimeWarning> warnings{};

    double probe_power = 0.0;                // photons/s
    std::optional<double> frequency_offset{};  // rad/s relative to omega_r

    DetectionChain chain{};
    bool bandwidth_defaulted = false;
    bool carrier_defaulted = false;

    AxisSpec kappa_axis{};
    AxisSpec power_axis{};
    SpectrumSpec spectrum{};
    OracleSpec oracle{};
    MonteCarloSpec monte_carlo{};

    std::string output_directory = "out";
    OutputFormat format = OutputFormat::Csv;

    std::string source_hash{};  // FNV-1a 64 of the source text, hex
};

/// Built-in configuration used when no file is given.
extern const char *const kDefaultConfigYaml;

RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::string &path);

/// FNV-1a 64-bit digest as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string &bytes);

OutputFormat parse_format(const std::string &name);

}  // namespace qnd

#endif
