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

#include <filesystem>

#include "gtest/gtest.h"

#include "qnd/constants.h"

using namespace qnd;

namespace {

std::string error_of(const std::string &text) {
    try {
        parse_config(text);
    } catch (const ConfigError &ex) {
        return ex.what();
    }
    return "";
}

const char *kMinimal = "device: {g_zz: 250, g_a: 150, kappa: 40}\nchain: {T_N: 0.14, tau: 10, B: 50}\n";

}  // namespace

TEST(config, default_config_parses) {
    RunConfig cfg = parse_config(kDefaultConfigYaml);
    EXPECT_NEAR(angular_to_mhz(cfg.couplings.g_zz()), 250.0, 1e-9);
    EXPECT_NEAR(angular_to_mhz(cfg.couplings.kappa()), 40.0, 1e-9);
    EXPECT_EQ(cfg.probe_power, 1e9);
    EXPECT_NEAR(cfg.chain.tau, 10e-9, 1e-20);
    EXPECT_NEAR(cfg.chain.bandwidth, 50e6, 1e-6);
    EXPECT_EQ(cfg.chain.carrier, cfg.couplings.omega_r());
    EXPECT_TRUE(cfg.carrier_defaulted);
    EXPECT_FALSE(cfg.bandwidth_defaulted);
    EXPECT_EQ(cfg.kappa_axis.points, 30u);
    EXPECT_EQ(cfg.power_axis.values().size(), 30u);
    EXPECT_NEAR(cfg.power_axis.values().front(), 1e7, 1e-3);
    EXPECT_TRUE(cfg.warnings.empty());
    EXPECT_EQ(cfg.format, OutputFormat::Csv);
    EXPECT_EQ(cfg.source_hash.size(), 16u);
}

TEST(config, defaults_for_optional_blocks) {
    RunConfig cfg = parse_config("device: {g_zz: 250, g_a: 150, kappa: 40}\nchain: {T_N: 4, tau: 60}\n");
    EXPECT_TRUE(cfg.bandwidth_defaulted);
    EXPECT_NEAR(cfg.chain.bandwidth, 1.0 / 120e-9, 1e-3);
    EXPECT_EQ(cfg.output_directory, "out");
    EXPECT_EQ(cfg.monte_carlo.seed, 12345u);
    EXPECT_EQ(cfg.oracle.points, 201u);
    EXPECT_FALSE(cfg.frequency_offset.has_value());
}

TEST(config, junction_route) {
    RunConfig cfg = parse_config(
        "device: {I_c: 30.0e-9, C: 65.0e-15, L: 5.0e-9, g_a: 60, kappa: 20, omega_a: 6000}\n"
        "chain: {T_N: 0.14, tau: 10}\n");
    ASSERT_TRUE(cfg.junction.has_value());
    EXPECT_NEAR(angular_to_mhz(cfg.couplings.g_zz()), 128.38207761946554, 1e-9);
    EXPECT_NEAR(angular_to_mhz(cfg.couplings.omega_r()), 6128.38207761946554, 1e-6);
}

TEST(config, errors_name_key_and_line) {
    std::string msg = error_of(std::string(kMinimal) + "probe:\n  power: 1\n  powr: 2\n");
    EXPECT_NE(msg.find("probe.powr"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 5"), std::string::npos) << msg;

    msg = error_of("device: {g_zz: 250, kappa: 40}\nchain: {T_N: 0.14, tau: 10}\n");
    EXPECT_NE(msg.find("device.g_a"), std::string::npos) << msg;

    msg = error_of("device: {g_zz: abc, g_a: 150, kappa: 40}\nchain: {T_N: 0.14, tau: 10}\n");
    EXPECT_NE(msg.find("device.g_zz"), std::string::npos) << msg;

    EXPECT_NE(error_of("chain: {T_N: 0.14, tau: 10}\n").find("device"), std::string::npos);
    EXPECT_NE(error_of(std::string(kMinimal) + "extra: 1\n").find("extra"), std::string::npos);
    EXPECT_NE(error_of(std::string(kMinimal) + "output: {format: xml}\n").find("csv"), std::string::npos);
    EXPECT_NE(error_of("device: [1, 2\n").find("line"), std::string::npos);
    EXPECT_NE(error_of("").find("empty"), std::string::npos);
    EXPECT_FALSE(error_of(std::string(kMinimal) + "sweep: {kappa: {min: 10, max: 5}}\n").empty());
    EXPECT_FALSE(error_of("device: {g_zz: 250, g_a: 150, kappa: -40}\nchain: {T_N: 0.14, tau: 10}\n").empty());
    EXPECT_FALSE(error_of("device: {g_zz: 250, g_a: 150, kappa: 40}\nchain: {T_N: 0.14, tau: 0}\n").empty());
}

TEST(config, regime_warnings_are_collected) {
    RunConfig cfg = parse_config("device: {g_zz: 100, g_a: 150, kappa: 200}\nchain: {T_N: 0.14, tau: 10, B: 1}\n");
    EXPECT_EQ(cfg.warnings.size(), 3u);
}

TEST(config, hash_and_format_helpers) {
    EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
    EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
    EXPECT_EQ(parse_config(kMinimal).source_hash, fnv1a_hex(kMinimal));
    EXPECT_EQ(parse_format("json"), OutputFormat::Json);
    EXPECT_THROW(parse_format("xml"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/config.yaml"), ConfigError);
}

TEST(config, probe_and_sweep_units) {
    RunConfig cfg = parse_config(std::string(kMinimal) +
                                 "probe: {power: 2.5, frequency_offset: -10}\n"
                                 "sweep:\n  kappa: {min: 10, max: 20, points: 3, spacing: linear}\n");
    EXPECT_EQ(cfg.probe_power, 2.5e9);
    EXPECT_NEAR(*cfg.frequency_offset, mhz_to_angular(-10.0), 1e-6);
    auto k = cfg.kappa_axis.values();
    ASSERT_EQ(k.size(), 3u);
    EXPECT_NEAR(angular_to_mhz(k[1]), 15.0, 1e-9);
}

TEST(config, bundled_configs_parse) {
    size_t count = 0;
    for (const auto &entry : std::filesystem::directory_iterator(QND_CONFIG_DIR)) {
        if (entry.path().extension() == ".yaml") {
            RunConfig cfg = load_config(entry.path().string());
            EXPECT_TRUE(cfg.warnings.empty()) << entry.path();
            count++;
        }
    }
    EXPECT_GE(count, 7u);
    EXPECT_EQ(load_config(std::string(QND_CONFIG_DIR) + "/default.yaml").source_hash, fnv1a_hex(kDefaultConfigYaml));
}
