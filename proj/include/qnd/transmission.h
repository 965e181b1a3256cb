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

#ifndef QND_TRANSMISSION_H
#define QND_TRANSMISSION_H

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "qnd/device.h"

namespace qnd {

using complex = std::complex<double>;

/// Logical qubit state. The ancilla transition is shifted by
/// delta_j = -g_zz (1 + sigma_z): zero for g, -2 g_zz for e.
enum class QubitState { G, E };

inline constexpr int sigma_z(QubitState s) { return s == QubitState::G ? -1 : +1; }
inline constexpr char label(QubitState s) { return s == QubitState::G ? 'g' : 'e'; }
/// Parses "g" or "e". Throws std::invalid_argument otherwise.
QubitState parse_qubit_state(std::string_view text);

/// Qubit-state dependent ancilla shift delta_j in rad/s.
double state_shift(QubitState state, const CouplingSet &couplings);

/// Which frequency units Gamma, kappa and the detunings carry inside the
/// saturation power. Angular makes p_s directly comparable with a photon flux
/// in photons/s; Cyclic divides p_s by 2pi.
enum class SaturationUnits { Angular, Cyclic };
inline constexpr SaturationUnits kDefaultSaturationUnits = SaturationUnits::Angular;

struct Probe {
    double omega;  // rad/s
    double power;  // incident photon flux, photons/s
};

struct TransmissionPoint {
    double omega;
    complex t;
    double power_ratio;
};

struct Peak {
    double omega;   // parabolically refined position, rad/s
    double height;  // refined |t|^2
    size_t index;   // grid index of the discrete maximum
};

struct Spectrum {
    QubitState qubit_state;
    double probe_power;
    std::vector<TransmissionPoint> points;
    std::vector<Peak> peaks;  // ordered by omega

    /// Highest peak. Throws std::logic_error when there are none.
    const Peak &dominant_peak() const;
};

/// Empty-resonator transmission t0 = -1 / (1 + i (omega_r - omega) / kappa).
complex t_empty(double omega, const CouplingSet &couplings);

/// Shift of the single excited-state peak, g_zz (sqrt(1 + g_a^2/g_zz^2) - 1).
double dispersive_shift(const CouplingSet &couplings);

/// Low-power transmission [1/t0 + i Gamma / (2 (omega_r + delta_j - omega))]^-1.
/// Returns the limit value 0 on the ancilla pole (t0 when g_a = 0).
complex t_linear(double omega, QubitState state, const CouplingSet &couplings);

/// Saturation flux p_s in photons/s.
/// p_s / Gamma = (Da / Gamma)^2 + [(omega_r - omega) Da / (Gamma kappa) - 1/2]^2,
/// Da = omega_r + delta_j - omega. Infinite for an uncoupled ancilla.
double saturation_power(
    double omega, QubitState state, const CouplingSet &couplings, SaturationUnits units = kDefaultSaturationUnits);

/// Saturating transmission t0 {1 - [1 + p/p_s]^-1 [1 - 2i Da / (Gamma t0)]^-1}.
complex t_full(
    double omega, QubitState state, double power, const CouplingSet &couplings,
    SaturationUnits units = kDefaultSaturationUnits);

/// p_t|j = |t_full|^2 p, photons/s.
double transmitted_power(
    double omega, QubitState state, double power, const CouplingSet &couplings,
    SaturationUnits units = kDefaultSaturationUnits);

/// Mean intracavity photon number p_t|j / kappa.
double intracavity_photons(
    double omega, QubitState state, double power, const CouplingSet &couplings,
    SaturationUnits units = kDefaultSaturationUnits);

/// Evaluates t_full over a strictly increasing grid and locates the local
/// maxima of |t|^2. Throws std::domain_error for an empty or unordered grid.
Spectrum spectrum(
    QubitState state, double power, std::span<const double> omega_grid, const CouplingSet &couplings,
    SaturationUnits units = kDefaultSaturationUnits);

/// Interior local maxima of a sampled curve with three-point parabolic
/// refinement. A single-sample curve yields that sample as its only peak.
std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y);

/// n uniformly spaced values from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, size_t n);
/// n log-spaced values from lo to hi inclusive (both > 0).
std::vector<double> logspace(double lo, double hi, size_t n);

/// Readout drive frequency omega_r + delta_L. With refine set, replaced by the
/// refined argmax of |t_e|^2 at the given power within +-g_a/2 of that point.
double readout_frequency(
    const CouplingSet &couplings, double power, bool refine = false,
    SaturationUnits units = kDefaultSaturationUnits);

}  // namespace qnd

#endif
