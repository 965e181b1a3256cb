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

#include "qnd/config.h"

#include <yaml-cpp/yaml.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "qnd/constants.h"
#include "qnd/transmission.h"

namespace qnd {

namespace {

std::string where(const YAML::Node &node, const std::string &path) {
    std::stringstream ss;
    ss << "'" << path << "'";
    if (node.Mark().line >= 0) {
        ss << " (line " << node.Mark().line + 1 << ")";
    }
    return ss.str();
}

// A mapping whose keys are consumed one by one; finish() rejects leftovers.
class Block {
   public:
    Block(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
        if (node_ && !node_.IsNull() && !node_.IsMap()) {
            throw ConfigError("config: " + where(node_, path_) + " must be a mapping");
        }
    }

    bool present() const { return node_ && node_.IsMap(); }
    bool has(const std::string &key) const {
        const YAML::Node &map = node_;
        return present() && map[key];
    }

    YAML::Node child(const std::string &key) {
        seen_.insert(key);
        if (!present()) {
            return YAML::Node(YAML::NodeType::Undefined);
        }
        const YAML::Node &map = node_;
        return map[key];
    }

    std::optional<double> number(const std::string &key) {
        YAML::Node v = child(key);
        if (!v) {
            return std::nullopt;
        }
        try {
            return v.as<double>();
        } catch (const YAML::Exception &) {
            throw ConfigError("config: " + where(v, key_path(key)) + " must be a number");
        }
    }

    double number(const std::string &key, double fallback) { return number(key).value_or(fallback); }

    double required(const std::string &key) {
        std::optional<double> v = number(key);
        if (!v) {
            throw ConfigError("config: missing required key '" + key_path(key) + "'" + line_suffix());
        }
        return *v;
    }

    size_t count(const std::string &key, size_t fallback) {
        YAML::Node v = child(key);
        if (!v) {
            return fallback;
        }
        long long n = 0;
        try {
            n = v.as<long long>();
        } catch (const YAML::Exception &) {
            throw ConfigError("config: " + where(v, key_path(key)) + " must be an integer");
        }
        if (n < 1) {
            throw ConfigError("config: " + where(v, key_path(key)) + " must be at least 1");
        }
        return static_cast<size_t>(n);
    }

    std::optional<std::string> text(const std::string &key) {
        YAML::Node v = child(key);
        if (!v) {
            return std::nullopt;
        }
        if (!v.IsScalar()) {
            throw ConfigError("config: " + where(v, key_path(key)) + " must be a scalar");
        }
        return v.as<std::string>();
    }

    std::optional<bool> flag(const std::string &key) {
        YAML::Node v = child(key);
        if (!v) {
            return std::nullopt;
        }
        try {
            return v.as<bool>();
        } catch (const YAML::Exception &) {
            throw ConfigError("config: " + where(v, key_path(key)) + " must be true or false");
        }
    }

    void finish() const {
        if (!present()) {
            return;
        }
        for (const auto &kv : node_) {
            std::string key = kv.first.as<std::string>();
            if (!seen_.count(key)) {
                throw ConfigError("config: unknown key " + where(kv.first, key_path(key)));
            }
        }
    }

    std::string key_path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    std::string line_suffix() const {
        if (present() && node_.Mark().line >= 0) {
            return " in block starting at line " + std::to_string(node_.Mark().line + 1);
        }
        return "";
    }

   private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> seen_;
};

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw ConfigError("config: " + message);
    }
}

AxisSpec parse_axis(Block &parent, const std::string &key, AxisSpec fallback, double scale) {
    Block b(parent.child(key), parent.key_path(key));
    AxisSpec axis = fallback;
    if (b.present()) {
        axis.min = b.number("min", fallback.min / scale) * scale;
        axis.max = b.number("max", fallback.max / scale) * scale;
        axis.points = b.count("points", fallback.points);
        std::string spacing = b.text("spacing").value_or(fallback.log_spacing ? "log" : "linear");
        require(spacing == "log" || spacing == "linear",
                "'" + b.key_path("spacing") + "' must be 'log' or 'linear'");
        axis.log_spacing = spacing == "log";
        b.finish();
    }
    require(axis.min > 0.0 && axis.max >= axis.min, "'" + parent.key_path(key) + "' needs 0 < min <= max");
    require(axis.points == 1 || axis.max > axis.min, "'" + parent.key_path(key) + "' needs min < max for several points");
    return axis;
}

CouplingSet parse_device(Block &dev, RunConfig &partial_warnings_sink, std::optional<JunctionCircuit> &junction) {
    bool junction_route = dev.has("I_c") || dev.has("C") || dev.has("L");
    double g_a = dev.required("g_a");
    double kappa = dev.required("kappa");
    std::optional<double> omega_qb = dev.number("omega_qb");
    if (junction_route) {
        require(!dev.has("g_zz") && !dev.has("omega_r"),
                "device: give either {I_c, C, L, omega_a} or {g_zz, omega_r}, not both");
        JunctionCircuit circuit{dev.required("I_c"), dev.required("C"), dev.required("L")};
        double omega_a_mhz = dev.required("omega_a");
        CircuitEnergies energies;
        try {
            energies = energies_from_junction(circuit);
        } catch (const std::exception &ex) {
            throw ConfigError(std::string("config: device: ") + ex.what());
        }
        for (auto &w : validate(energies)) {
            partial_warnings_sink.warnings.push_back(w);
        }
        junction = circuit;
        double omega_a = mhz_to_angular(omega_a_mhz);
        return CouplingSet::frequency_matched(
            omega_a, omega_qb ? mhz_to_angular(*omega_qb) : omega_a, cross_kerr(energies), mhz_to_angular(g_a),
            mhz_to_angular(kappa));
    }
    double g_zz = dev.required("g_zz");
    double omega_r = dev.number("omega_r", CouplingSet::kDefaultResonatorMhz);
    return CouplingSet::from_mhz(g_zz, g_a, kappa, omega_r, omega_qb.value_or(0.0));
}

}  // namespace

const char *const kDefaultConfigYaml =
    "# Operating point of the optimised readout: 250/150/40 MHz couplings,\n"
    "# 1 photon/ns probe, 140 mK amplifier, 10 ns window, 50 MHz bandwidth.\n"
    "device:\n"
    "  g_zz: 250.0      # MHz\n"
    "  g_a: 150.0       # MHz\n"
    "  kappa: 40.0      # MHz\n"
    "  omega_r: 7000.0  # MHz\n"
    "\n"
    "probe:\n"
    "  power: 1.0       # photons/ns\n"
    "\n"
    "chain:\n"
    "  T_N: 0.14        # K\n"
    "  tau: 10.0        # ns\n"
    "  B: 50.0          # MHz\n"
    "\n"
    "sweep:\n"
    "  kappa: {min: 5.0, max: 200.0, points: 30, spacing: log}\n"
    "  power: {min: 0.01, max: 10.0, points: 30, spacing: log}\n"
    "\n"
    "output:\n"
    "  directory: out\n"
    "  format: csv\n";

std::vector<double> AxisSpec::values() const {
    return log_spacing ? logspace(min, max, points) : linspace(min, max, points);
}

OutputFormat parse_format(const std::string &name) {
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    if (name == "json") {
        return OutputFormat::Json;
    }
    throw ConfigError("output format must be 'csv' or 'json', got '" + name + "'");
}

std::string fnv1a_hex(const std::string &bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunConfig parse_config(const std::string &text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException &ex) {
        throw ConfigError("config: YAML syntax error at line " + std::to_string(ex.mark.line + 1) + ": " + ex.msg);
    }
    if (!root || root.IsNull()) {
        throw ConfigError("config: empty configuration");
    }
    Block top(root, "");

    Block dev(top.child("device"), "device");
    require(dev.present(), "missing required block 'device'");
    RunConfig staging{.couplings = CouplingSet::from_mhz(1.0, 0.0, 1.0)};
    std::optional<JunctionCircuit> junction;
    CouplingSet couplings = [&] {
        try {
            return parse_device(dev, staging, junction);
        } catch (const std::invalid_argument &ex) {
            throw ConfigError(std::string("config: device: ") + ex.what());
        }
    }();
    dev.finish();

    RunConfig cfg{.couplings = couplings};
    cfg.junction = junction;
    cfg.warnings = std::move(staging.warnings);
    for (auto &w : validate(couplings)) {
        cfg.warnings.push_back(w);
    }

    Block probe(top.child("probe"), "probe");
    cfg.probe_power = probe.number("power", 1.0) * kPhotonsPerNs;
    require(cfg.probe_power >= 0.0, "'probe.power' must be non-negative");
    if (auto off = probe.number("frequency_offset")) {
        cfg.frequency_offset = mhz_to_angular(*off);
    }
    probe.finish();

    Block chain(top.child("chain"), "chain");
    require(chain.present(), "missing required block 'chain'");
    double t_n = chain.required("T_N");
    double tau = chain.required("tau") * kNanosecond;
    std::optional<double> bandwidth = chain.number("B");
    std::optional<double> carrier = chain.number("carrier");
    chain.finish();
    cfg.bandwidth_defaulted = !bandwidth;
    cfg.carrier_defaulted = !carrier;
    cfg.chain = DetectionChain{
        t_n,
        bandwidth ? *bandwidth * 1e6 : 0.5 / tau,
        tau,
        carrier ? kTwoPi * *carrier * 1e9 : couplings.omega_r(),
    };
    try {
        cfg.chain.check();
    } catch (const std::invalid_argument &ex) {
        throw ConfigError(std::string("config: chain: ") + ex.what());
    }
    for (auto &w : validate(cfg.chain)) {
        cfg.warnings.push_back(w);
    }

    Block sweep(top.child("sweep"), "sweep");
    cfg.kappa_axis = parse_axis(sweep, "kappa", {mhz_to_angular(5.0), mhz_to_angular(200.0), 30, true}, mhz_to_angular(1.0));
    cfg.power_axis = parse_axis(sweep, "power", {1e-2 * kPhotonsPerNs, 10.0 * kPhotonsPerNs, 30, true}, kPhotonsPerNs);
    sweep.finish();

    Block spec(top.child("spectrum"), "spectrum");
    cfg.spectrum.span = mhz_to_angular(spec.number("span", 400.0));
    cfg.spectrum.points = spec.count("points", 801);
    cfg.spectrum.offsets = spec.flag("offsets").value_or(true);
    require(cfg.spectrum.span > 0.0, "'spectrum.span' must be positive");
    spec.finish();

    Block oracle(top.child("oracle"), "oracle");
    cfg.oracle.span = mhz_to_angular(oracle.number("span", 400.0));
    cfg.oracle.points = oracle.count("points", 201);
    cfg.oracle.drive_fraction = oracle.number("drive_fraction", 1e-4);
    cfg.oracle.tolerance = oracle.number("tolerance", 1e-3);
    cfg.oracle.ode_tol = oracle.number("ode_tol", 1e-9);
    require(cfg.oracle.span > 0.0, "'oracle.span' must be positive");
    require(cfg.oracle.drive_fraction > 0.0, "'oracle.drive_fraction' must be positive");
    require(cfg.oracle.ode_tol >= 1e-12 && cfg.oracle.ode_tol <= 1e-4, "'oracle.ode_tol' must lie in [1e-12, 1e-4]");
    oracle.finish();

    Block mc(top.child("monte_carlo"), "monte_carlo");
    cfg.monte_carlo.samples = static_cast<uint64_t>(mc.number("samples", 0.0));
    cfg.monte_carlo.seed = static_cast<uint64_t>(mc.number("seed", 12345.0));
    mc.finish();

    Block out(top.child("output"), "output");
    cfg.output_directory = out.text("directory").value_or("out");
    cfg.format = parse_format(out.text("format").value_or("csv"));
    out.finish();

    top.finish();
    cfg.source_hash = fnv1a_hex(text);
    return cfg;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config: cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace qnd
