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

#ifndef QND_DYNAMICS_H
#define QND_DYNAMICS_H

#include <stdexcept>
#include <vector>

#include "qnd/device.h"
#include "qnd/transmission.h"

namespace qnd {

/// Mean-field values of the atom and cavity operators in the frame rotating
/// at the probe frequency. sigma_minus_qb is expressed in the frame rotating
/// at the qubit frequency with the ancilla in its ground state,
/// omega_qb + g_zz, so it is stationary unless the ancilla is excited.
struct SemiclassicalState {
    double sigma_z_a = -1.0;
    complex sigma_minus_a = 0.0;
    complex sigma_minus_qb = 0.5;
    complex a = 0.0;

    /// (sigma_z_a)^2 + 4 |sigma_minus_a|^2, conserved by the equations of motion.
    double bloch_length() const { return sigma_z_a * sigma_z_a + 4.0 * std::norm(sigma_minus_a); }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SemiclassicalState> states;
    double kappa = 0.0;  // of the couplings that produced it, rad/s
    bool converged = false;
    SemiclassicalState steady_value;
};

struct IntegrationOptions {
    double t_end;             // seconds, at least 20 / kappa
    double tol = 1e-9;        // relative, in [1e-12, 1e-4]
    double record_from = 0;   // states before this time are not stored
};

/// Thrown when the adaptive step collapses; carries the last accepted state.
struct IntegrationFailure : std::runtime_error {
    IntegrationFailure(const std::string &what, double t, SemiclassicalState last)
        : std::runtime_error(what), t(t), last_good(last) {
    }
    double t;
    SemiclassicalState last_good;
};

/// Integrates the driven atom-cavity mean-field equations from the
/// undriven ground state (sigma_z_a = -1, sigma_minus_a = 0,
/// sigma_minus_qb = 1/2, a = 0) with the drive b_in = sqrt(p) real:
///
///   d sigma_z_a / dt  = -2 g_a (sigma_+ a + sigma_- a*)
///   d sigma_-a / dt   = -i (omega_r - omega + delta_j) sigma_-a + g_a sigma_z_a a
///   d sigma_-qb / dt  = i g_zz (1 + sigma_z_a) sigma_-qb
///   d a / dt          = -i (omega_r - omega) a - kappa a + g_a sigma_-a + i sqrt(kappa p)
///
/// The returned trajectory has converged/steady_value filled from a
/// steady_state() pass over the last 20 / kappa.
Trajectory integrate(QubitState state, const Probe &probe, const CouplingSet &couplings, const IntegrationOptions &opts);

/// Steady value over the trailing window. Converged when the standard
/// deviation of |a| over the window is below 1e-6 max(mean |a|, 1); the last
/// state is returned then, the window time-average otherwise.
/// Throws std::domain_error if the window is shorter than 5 / kappa or longer
/// than the recorded trajectory.
struct SteadyState {
    SemiclassicalState value;
    bool converged;
};
SteadyState steady_state(const Trajectory &trajectory, double window);

/// Input-output relation t = i sqrt(kappa) a / sqrt(p).
/// Throws std::domain_error for a zero drive.
complex t_from_ode(const SemiclassicalState &steady, const Probe &probe, const CouplingSet &couplings);

/// Reflected field b_r = sqrt(p) + i sqrt(kappa) a.
complex reflected_field(const SemiclassicalState &state, const Probe &probe, const CouplingSet &couplings);

/// Integrate to steady state and return the transmission. Used by the oracle
/// comparisons; runs for t_end_kappa / kappa with a 20 / kappa window.
struct OdeTransmission {
    complex t;
    bool converged;
};
OdeTransmission steady_transmission(
    QubitState state, const Probe &probe, const CouplingSet &couplings, double tol = 1e-9, double t_end_kappa = 400.0);

}  // namespace qnd

#endif
