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

#ifndef QND_DEVICE_H
#define QND_DEVICE_H

#include <string>
#include <vector>

namespace qnd {

/// Junction and coupling-inductance parameters of the two-transmon circuit.
/// SI units: amperes, farads, henries.
struct JunctionCircuit {
    double critical_current;
    double capacitance;
    double inductance;
};

/// Josephson, charging and inductive energies in joules.
struct CircuitEnergies {
    double josephson;
    double charging;
    double inductive;

    double ratio() const { return josephson / charging; }
};

enum class RegimeWarningKind {
    TransmonRatio,        // E_J / E_C outside [25, 100]
    DispersiveContrast,   // g_zz <= g_a
    Resolvability,        // kappa >= g_a
    CorrelationTime,      // tau < 1 / (2B)
};

struct RegimeWarning {
    RegimeWarningKind kind;
    std::string message;
};

/// Frequencies and couplings of the atom-cavity system, all stored as
/// angular frequencies in rad/s.
///
/// omega_qb is carried for completeness; no readout quantity depends on it.
/// g_a may be zero (uncoupled ancilla, empty-cavity limit); every other field
/// must be strictly positive.
class CouplingSet {
   public:
    /// Direct construction from angular frequencies. Throws
    /// std::invalid_argument if an invariant is violated.
    CouplingSet(double omega_r, double omega_a, double omega_qb, double g_zz, double g_a, double kappa);

    /// Enforces omega_r = omega_a + g_zz (ancilla g->m transition resonant
    /// with the cavity).
    static CouplingSet frequency_matched(double omega_a, double omega_qb, double g_zz, double g_a, double kappa);

    /// Cyclic-MHz entry point used by configs and the CLI. omega_a is derived
    /// as omega_r - g_zz; omega_qb defaults to omega_a when not given.
    static CouplingSet from_mhz(
        double g_zz_mhz, double g_a_mhz, double kappa_mhz, double omega_r_mhz = kDefaultResonatorMhz,
        double omega_qb_mhz = 0.0);

    /// Same couplings with a different cavity linewidth.
    CouplingSet with_kappa(double kappa) const;
    /// Same couplings with a different ancilla-cavity coupling.
    CouplingSet with_g_a(double g_a) const;

    double omega_r() const { return omega_r_; }
    double omega_a() const { return omega_a_; }
    double omega_qb() const { return omega_qb_; }
    double g_zz() const { return g_zz_; }
    double g_a() const { return g_a_; }
    double kappa() const { return kappa_; }
    /// Ancilla-induced cavity damping scale 2 g_a^2 / kappa.
    double gamma() const { return 2.0 * g_a_ * g_a_ / kappa_; }

    static constexpr double kDefaultResonatorMhz = 7000.0;

   private:
    double omega_r_;
    double omega_a_;
    double omega_qb_;
    double g_zz_;
    double g_a_;
    double kappa_;
};

/// E_J = Phi0 I_c / 2pi, E_C = e^2 / 2C, E_L = (Phi0 / 2pi)^2 / L.
/// Throws std::domain_error on non-positive input.
CircuitEnergies energies_from_junction(const JunctionCircuit &circuit);

/// Cross-Kerr strength g_zz = E_C / (hbar sqrt(1 + 2 E_L / E_J)) in rad/s.
double cross_kerr(const CircuitEnergies &energies);

std::vector<RegimeWarning> validate(const CircuitEnergies &energies);
std::vector<RegimeWarning> validate(const CouplingSet &couplings);

}  // namespace qnd

#endif
