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

#include "qnd/transmission.h"

#include "gtest/gtest.h"

#include "qnd/constants.h"
#include "test_util.h"

using namespace qnd;
using qnd_test::reference_couplings;

TEST(transmission, dispersive_shift_frozen) {
    EXPECT_NEAR(angular_to_mhz(dispersive_shift(reference_couplings())), 41.547594742265024, 1e-9);
    CouplingSet strong = CouplingSet::from_mhz(1000.0, 150.0, 40.0);
    EXPECT_NEAR(angular_to_mhz(dispersive_shift(strong)), 11.187420807834219, 1e-9);
    // Dispersive limit g_a^2 / (2 g_zz).
    EXPECT_NEAR(angular_to_mhz(dispersive_shift(strong)), 11.25, 0.1);
}

TEST(transmission, empty_cavity) {
    CouplingSet c = reference_couplings();
    EXPECT_NEAR(std::abs(t_empty(c.omega_r(), c) + 1.0), 0.0, 1e-15);
    complex half = t_empty(c.omega_r() + c.kappa(), c);
    EXPECT_NEAR(std::norm(half), 0.5, 1e-12);
}

TEST(transmission, linear_spectrum_landmarks) {
    CouplingSet c = reference_couplings();
    EXPECT_LE(std::norm(t_linear(c.omega_r(), QubitState::G, c)), 1e-4);
    EXPECT_NEAR(std::norm(t_linear(c.omega_r() + dispersive_shift(c), QubitState::E, c)), 1.0, 1e-3);
    for (double sign : {-1.0, 1.0}) {
        double peak = c.omega_r() + sign * c.g_a();
        EXPECT_NEAR(std::norm(t_linear(peak, QubitState::G, c)), 1.0, 2e-3);
    }
}

TEST(transmission, uncoupled_ancilla_gives_empty_cavity) {
    CouplingSet c = reference_couplings().with_g_a(0.0);
    qnd_test::Gen gen(3);
    for (int k = 0; k < 50; k++) {
        double omega = c.omega_r() + mhz_to_angular(gen.uniform(-300.0, 300.0));
        EXPECT_EQ(t_linear(omega, QubitState::G, c), t_empty(omega, c));
        EXPECT_TRUE(std::isinf(saturation_power(omega, QubitState::E, c)));
        EXPECT_NEAR(std::abs(t_full(omega, QubitState::G, 1e9, c) - t_empty(omega, c)), 0.0, 1e-15);
    }
}

TEST(transmission, full_reduces_to_linear_and_empty) {
    qnd_test::Gen gen(17);
    for (int k = 0; k < 300; k++) {
        CouplingSet c = gen.couplings();
        QubitState s = gen.index(2) ? QubitState::E : QubitState::G;
        double omega = c.omega_r() + mhz_to_angular(gen.uniform(-400.0, 400.0));
        complex lin = t_linear(omega, s, c);
        EXPECT_NEAR(std::abs(t_full(omega, s, 0.0, c) - lin), 0.0, 1e-12);
        double p_s = saturation_power(omega, s, c);
        EXPECT_NEAR(std::abs(t_full(omega, s, 1e12 * p_s, c) - t_empty(omega, c)), 0.0, 1e-9);
    }
}

TEST(transmission, saturation_power_self_consistent) {
    // t_full - t0 = (t_linear - t0) / (1 + p/p_s), so a single evaluation of
    // t_full at any p recovers p_s.
    CouplingSet c = reference_couplings();
    double omega = c.omega_r() + dispersive_shift(c);
    double p_s = saturation_power(omega, QubitState::G, c);
    complex t0 = t_empty(omega, c);
    complex lin = t_linear(omega, QubitState::G, c);
    for (double p : {1e6, 1e8, 1e9, 1e10}) {
        complex ratio = (t_full(omega, QubitState::G, p, c) - t0) / (lin - t0);
        EXPECT_NEAR(ratio.imag(), 0.0, 1e-12);
        double recovered = p / (1.0 / ratio.real() - 1.0);
        EXPECT_NEAR(recovered / p_s, 1.0, 1e-9);
    }
}

TEST(transmission, saturation_units_differ_by_two_pi) {
    qnd_test::Gen gen(23);
    for (int k = 0; k < 100; k++) {
        CouplingSet c = gen.couplings();
        double omega = c.omega_r() + mhz_to_angular(gen.uniform(-200.0, 200.0));
        double a = saturation_power(omega, QubitState::G, c, SaturationUnits::Angular);
        double b = saturation_power(omega, QubitState::G, c, SaturationUnits::Cyclic);
        EXPECT_NEAR(a / b, kTwoPi, 1e-12 * kTwoPi);
    }
}

TEST(transmission, passive_cavity_never_amplifies) {
    qnd_test::Gen gen(29);
    for (int k = 0; k < 2000; k++) {
        CouplingSet c = gen.couplings();
        QubitState s = gen.index(2) ? QubitState::E : QubitState::G;
        double omega = c.omega_r() + mhz_to_angular(gen.uniform(-500.0, 500.0));
        double p = gen.log_uniform(1e3, 1e13);
        double tt = std::norm(t_full(omega, s, p, c));
        EXPECT_LE(tt, 1.0 + 1e-12);
        EXPECT_GE(tt, 0.0);
        EXPECT_NEAR(transmitted_power(omega, s, p, c), tt * p, 1e-9 * p);
        EXPECT_NEAR(intracavity_photons(omega, s, p, c), tt * p / c.kappa(), 1e-9 * p / c.kappa());
    }
}

TEST(transmission, state_contrast_at_readout_point) {
    CouplingSet c = reference_couplings();
    double omega = readout_frequency(c, 1e9);
    double te = std::norm(t_full(omega, QubitState::E, 1e9, c));
    double tg = std::norm(t_full(omega, QubitState::G, 1e9, c));
    EXPECT_GT(te / tg, 5.0);
}

TEST(transmission, optimum_fluxes_frozen) {
    CouplingSet c = reference_couplings();
    double omega = readout_frequency(c, 1e9);
    EXPECT_NEAR(transmitted_power(omega, QubitState::G, 1e9, c), 60737510.594178, 1e-3);
    EXPECT_NEAR(transmitted_power(omega, QubitState::E, 1e9, c), 681112491.752347, 1e-2);
}

TEST(transmission, low_power_spectrum_peaks) {
    CouplingSet c = reference_couplings();
    auto grid = linspace(c.omega_r() - mhz_to_angular(400.0), c.omega_r() + mhz_to_angular(400.0), 801);
    Spectrum g = spectrum(QubitState::G, 1e-3, grid, c);
    ASSERT_EQ(g.peaks.size(), 2u);
    EXPECT_NEAR(angular_to_mhz(g.peaks[0].omega - c.omega_r()), -150.0, 0.5);
    EXPECT_NEAR(angular_to_mhz(g.peaks[1].omega - c.omega_r()), 150.0, 0.5);
    Spectrum e = spectrum(QubitState::E, 1e-3, grid, c);
    EXPECT_NEAR(angular_to_mhz(e.dominant_peak().omega - c.omega_r()), 41.55, 0.1);
    EXPECT_EQ(g.points.size(), grid.size());
    EXPECT_EQ(g.points[400].power_ratio, std::norm(g.points[400].t));
}

TEST(transmission, spectrum_rejects_bad_grids) {
    CouplingSet c = reference_couplings();
    std::vector<double> empty;
    EXPECT_THROW(spectrum(QubitState::G, 1.0, empty, c), std::domain_error);
    std::vector<double> unordered{c.omega_r(), c.omega_r() - 1.0};
    EXPECT_THROW(spectrum(QubitState::G, 1.0, unordered, c), std::domain_error);
    EXPECT_THROW(t_full(c.omega_r(), QubitState::G, -1.0, c), std::domain_error);
}

TEST(transmission, parabolic_peak_refinement_is_exact_for_parabolas) {
    qnd_test::Gen gen(31);
    for (int k = 0; k < 100; k++) {
        double x0 = gen.uniform(-3.0, 3.0), h = gen.uniform(0.5, 2.0), a = gen.uniform(0.1, 5.0);
        auto x = linspace(-5.0, 5.0, 41);
        std::vector<double> y;
        for (double xi : x) {
            y.push_back(h - a * (xi - x0) * (xi - x0));
        }
        auto peaks = find_peaks(x, y);
        ASSERT_EQ(peaks.size(), 1u);
        EXPECT_NEAR(peaks[0].omega, x0, 1e-9);
        EXPECT_NEAR(peaks[0].height, h, 1e-9);
    }
    std::vector<double> one_x{2.0}, one_y{0.5};
    auto single = find_peaks(one_x, one_y);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single[0].omega, 2.0);
}

TEST(transmission, grids) {
    auto lin = linspace(1.0, 3.0, 5);
    EXPECT_EQ(lin.front(), 1.0);
    EXPECT_EQ(lin.back(), 3.0);
    EXPECT_DOUBLE_EQ(lin[2], 2.0);
    auto lg = logspace(1.0, 100.0, 3);
    EXPECT_EQ(lg.front(), 1.0);
    EXPECT_EQ(lg.back(), 100.0);
    EXPECT_NEAR(lg[1], 10.0, 1e-12);
}

TEST(transmission, refined_probe_tracks_excited_peak) {
    CouplingSet c = reference_couplings();
    double plain = readout_frequency(c, 1e3);
    double refined = readout_frequency(c, 1e3, true);
    EXPECT_EQ(plain, c.omega_r() + dispersive_shift(c));
    EXPECT_NEAR(angular_to_mhz(refined - plain), 0.0, 0.05);
}

TEST(transmission, qubit_state_parsing) {
    EXPECT_EQ(parse_qubit_state("g"), QubitState::G);
    EXPECT_EQ(parse_qubit_state("e"), QubitState::E);
    EXPECT_THROW(parse_qubit_state("x"), std::invalid_argument);
    EXPECT_EQ(sigma_z(QubitState::E), 1);
    EXPECT_EQ(label(QubitState::G), 'g');
}
