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

#ifndef QND_READOUT_H
#define QND_READOUT_H

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qnd/device.h"
#include "qnd/photostatistics.h"
#include "qnd/transmission.h"

namespace qnd {

/// Which side of the threshold is assigned to the excited state.
enum class Orientation {
    ExcitedAbove,  // n > threshold -> e
    ExcitedBelow,  // n > threshold -> g
};

struct Discriminator {
    size_t threshold;
    Orientation orientation;
    double err_g;  // P(assign e | g)
    double err_e;  // P(assign g | e)

    double fidelity() const { return 1.0 - 0.5 * (err_g + err_e); }
};

/// Exhaustive scan over integer thresholds 0..max cutoff in both orientations,
/// minimising the mean misassignment probability. Ties keep the lowest
/// threshold, ExcitedAbove first.
Discriminator decision_threshold(const PhotonDistribution &dist_g, const PhotonDistribution &dist_e);

/// Summed pointwise minimum of two count distributions.
double overlap(const PhotonDistribution &a, const PhotonDistribution &b);

struct ReadoutOptions {
    bool refine_probe = false;
    SaturationUnits units = kDefaultSaturationUnits;
    // Fixed probe detuning from omega_r (rad/s); overrides the readout
    // frequency search when set.
    std::optional<double> frequency_offset;
};

struct FidelityReport {
    double probe_omega;  // rad/s
    double probe_power;  // photons/s
    double p_t_g;        // photons/s
    double p_t_e;
    double nbar_g;
    double nbar_e;
    double noise_flux;  // photons/s
    size_t threshold;
    Orientation orientation;
    double err_g;
    double err_e;
    double fidelity;
};

/// The full readout chain for one operating point: drive at the readout
/// frequency, conditional transmitted fluxes, Johnson-Nyquist noise, count
/// distributions and the optimal threshold.
FidelityReport fidelity(
    const CouplingSet &couplings, double probe_power, const DetectionChain &chain, const ReadoutOptions &opts = {});

/// The two conditional count distributions (g first) behind fidelity().
std::pair<PhotonDistribution, PhotonDistribution> histogram_pair(
    const CouplingSet &couplings, double probe_power, const DetectionChain &chain, const ReadoutOptions &opts = {});

struct SweepGrid {
    std::vector<double> kappa_values;  // rad/s
    std::vector<double> p_values;      // photons/s
    std::vector<std::vector<double>> fidelity;  // [kappa index][p index]
    size_t argmax_kappa = 0;
    size_t argmax_p = 0;

    double best() const { return fidelity[argmax_kappa][argmax_p]; }
};

/// Fidelity over a (kappa, p) grid with the other couplings held fixed.
/// The argmax is the best grid cell; the first one wins on ties.
/// Throws std::domain_error for empty or non-increasing axes.
SweepGrid fidelity_map(
    std::span<const double> kappa_grid, std::span<const double> p_grid, const DetectionChain &chain,
    const CouplingSet &couplings_template, const ReadoutOptions &opts = {});

}  // namespace qnd

#endif
