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

#include "qnd/device.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qnd/constants.h"

namespace qnd {

namespace {

void require_positive(double value, const char *name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        std::stringstream ss;
        ss << name << " must be strictly positive and finite, got " << value;
        throw std::invalid_argument(ss.str());
    }
}

}  // namespace

CouplingSet::CouplingSet(double omega_r, double omega_a, double omega_qb, double g_zz, double g_a, double kappa)
    : omega_r_(omega_r), omega_a_(omega_a), omega_qb_(omega_qb), g_zz_(g_zz), g_a_(g_a), kappa_(kappa) {
    require_positive(omega_r, "omega_r");
    require_positive(omega_a, "omega_a");
    require_positive(omega_qb, "omega_qb");
    require_positive(g_zz, "g_zz");
    require_positive(kappa, "kappa");
    if (!(g_a >= 0.0) || !std::isfinite(g_a)) {
        throw std::invalid_argument("g_a must be non-negative and finite");
    }
}

CouplingSet CouplingSet::frequency_matched(double omega_a, double omega_qb, double g_zz, double g_a, double kappa) {
    return CouplingSet(omega_a + g_zz, omega_a, omega_qb, g_zz, g_a, kappa);
}

CouplingSet CouplingSet::from_mhz(
    double g_zz_mhz, double g_a_mhz, double kappa_mhz, double omega_r_mhz, double omega_qb_mhz) {
    double omega_r = mhz_to_angular(omega_r_mhz);
    double g_zz = mhz_to_angular(g_zz_mhz);
    double omega_a = omega_r - g_zz;
    double omega_qb = omega_qb_mhz > 0.0 ? mhz_to_angular(omega_qb_mhz) : omega_a;
    return CouplingSet(omega_r, omega_a, omega_qb, g_zz, mhz_to_angular(g_a_mhz), mhz_to_angular(kappa_mhz));
}

CouplingSet CouplingSet::with_kappa(double kappa) const {
    return CouplingSet(omega_r_, omega_a_, omega_qb_, g_zz_, g_a_, kappa);
}

CouplingSet CouplingSet::with_g_a(double g_a) const {
    return CouplingSet(omega_r_, omega_a_, omega_qb_, g_zz_, g_a, kappa_);
}

CircuitEnergies energies_from_junction(const JunctionCircuit &circuit) {
    if (!(circuit.critical_current > 0.0) || !(circuit.capacitance > 0.0) || !(circuit.inductance > 0.0)) {
        throw std::domain_error("junction circuit parameters must be strictly positive");
    }
    constexpr double reduced_flux = codata::flux_quantum / kTwoPi;
    return CircuitEnergies{
        .josephson = reduced_flux * circuit.critical_current,
        .charging = codata::elementary_charge * codata::elementary_charge / (2.0 * circuit.capacitance),
        .inductive = reduced_flux * reduced_flux / circuit.inductance,
    };
}

double cross_kerr(const CircuitEnergies &energies) {
    return energies.charging / (codata::hbar * std::sqrt(1.0 + 2.0 * energies.inductive / energies.josephson));
}

std::vector<RegimeWarning> validate(const CircuitEnergies &energies) {
    std::vector<RegimeWarning> out;
    double r = energies.ratio();
    if (r < 25.0 || r > 100.0) {
        std::stringstream ss;
        ss << "E_J/E_C = " << r << " is outside the transmon regime [25, 100]";
        out.push_back({RegimeWarningKind::TransmonRatio, ss.str()});
    }
    return out;
}

std::vector<RegimeWarning> validate(const CouplingSet &c) {
    std::vector<RegimeWarning> out;
    if (c.g_zz() <= c.g_a()) {
        std::stringstream ss;
        ss << "g_zz/2pi = " << angular_to_mhz(c.g_zz()) << " MHz does not exceed g_a/2pi = " << angular_to_mhz(c.g_a())
           << " MHz; the excited-state response is not dispersive";
        out.push_back({RegimeWarningKind::DispersiveContrast, ss.str()});
    }
    if (c.kappa() >= c.g_a()) {
        std::stringstream ss;
        ss << "kappa/2pi = " << angular_to_mhz(c.kappa()) << " MHz is not below g_a/2pi = " << angular_to_mhz(c.g_a())
           << " MHz; vacuum Rabi peaks are not resolved";
        out.push_back({RegimeWarningKind::Resolvability, ss.str()});
    }
    return out;
}

}  // namespace qnd
