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

#include "qnd/readout.h"

#include <algorithm>
#include <stdexcept>

#include "qnd/parallel.h"

namespace qnd {

namespace {

void require_increasing(std::span<const double> axis, const char *name) {
    if (axis.empty()) {
        throw std::domain_error(std::string("fidelity_map: empty ") + name + " axis");
    }
    for (size_t i = 1; i < axis.size(); i++) {
        if (!(axis[i] > axis[i - 1])) {
            throw std::domain_error(std::string("fidelity_map: ") + name + " axis must be strictly increasing");
        }
    }
}

}  // namespace

Discriminator decision_threshold(const PhotonDistribution &dist_g, const PhotonDistribution &dist_e) {
    size_t n_max = std::max(dist_g.probs.size(), dist_e.probs.size());
    double total_g = dist_g.total();
    double total_e = dist_e.total();
    Discriminator best{0, Orientation::ExcitedAbove, 1.0, 1.0};
    double best_error = 2.0;
    double cdf_g = 0.0, cdf_e = 0.0;
    for (size_t n = 0; n < std::max<size_t>(n_max, 1); n++) {
        cdf_g += dist_g.at(n);
        cdf_e += dist_e.at(n);
        double above_g = std::max(0.0, total_g - cdf_g);
        double above_e = std::max(0.0, total_e - cdf_e);
        // e above: g misassigned when above, e misassigned when at or below.
        double eg = above_g, ee = cdf_e;
        if (eg + ee < best_error) {
            best_error = eg + ee;
            best = {n, Orientation::ExcitedAbove, eg, ee};
        }
        eg = cdf_g;
        ee = above_e;
        if (eg + ee < best_error) {
            best_error = eg + ee;
            best = {n, Orientation::ExcitedBelow, eg, ee};
        }
    }
    return best;
}

double overlap(const PhotonDistribution &a, const PhotonDistribution &b) {
    size_t n = std::max(a.probs.size(), b.probs.size());
    double sum = 0.0;
    for (size_t k = 0; k < n; k++) {
        sum += std::min(a.at(k), b.at(k));
    }
    return sum;
}

namespace {

struct ConditionalSignals {
    double omega;
    double p_t_g;
    double p_t_e;
    double noise;
};

ConditionalSignals conditional_signals(
    const CouplingSet &c, double power, const DetectionChain &chain, const ReadoutOptions &opts) {
    double omega = opts.frequency_offset ? c.omega_r() + *opts.frequency_offset
                                         : readout_frequency(c, power, opts.refine_probe, opts.units);
    return {
        omega,
        transmitted_power(omega, QubitState::G, power, c, opts.units),
        transmitted_power(omega, QubitState::E, power, c, opts.units),
        noise_flux(chain),
    };
}

}  // namespace

std::pair<PhotonDistribution, PhotonDistribution> histogram_pair(
    const CouplingSet &c, double power, const DetectionChain &chain, const ReadoutOptions &opts) {
    ConditionalSignals sig = conditional_signals(c, power, chain, opts);
    return {
        count_distribution(sig.p_t_g, sig.noise, chain.tau),
        count_distribution(sig.p_t_e, sig.noise, chain.tau),
    };
}

FidelityReport fidelity(const CouplingSet &c, double power, const DetectionChain &chain, const ReadoutOptions &opts) {
    ConditionalSignals sig = conditional_signals(c, power, chain, opts);
    PhotonDistribution dist_g = count_distribution(sig.p_t_g, sig.noise, chain.tau);
    PhotonDistribution dist_e = count_distribution(sig.p_t_e, sig.noise, chain.tau);
    Discriminator d = decision_threshold(dist_g, dist_e);
    return FidelityReport{
        .probe_omega = sig.omega,
        .probe_power = power,
        .p_t_g = sig.p_t_g,
        .p_t_e = sig.p_t_e,
        .nbar_g = sig.p_t_g / c.kappa(),
        .nbar_e = sig.p_t_e / c.kappa(),
        .noise_flux = sig.noise,
        .threshold = d.threshold,
        .orientation = d.orientation,
        .err_g = d.err_g,
        .err_e = d.err_e,
        .fidelity = d.fidelity(),
    };
}

SweepGrid fidelity_map(
    std::span<const double> kappa_grid, std::span<const double> p_grid, const DetectionChain &chain,
    const CouplingSet &couplings_template, const ReadoutOptions &opts) {
    require_increasing(kappa_grid, "kappa");
    require_increasing(p_grid, "power");
    SweepGrid grid;
    grid.kappa_values.assign(kappa_grid.begin(), kappa_grid.end());
    grid.p_values.assign(p_grid.begin(), p_grid.end());
    grid.fidelity.assign(kappa_grid.size(), std::vector<double>(p_grid.size(), 0.0));

    const size_t cols = p_grid.size();
    parallel_for(kappa_grid.size() * cols, [&](size_t cell) {
        size_t i = cell / cols, j = cell % cols;
        CouplingSet c = couplings_template.with_kappa(kappa_grid[i]);
        grid.fidelity[i][j] = fidelity(c, p_grid[j], chain, opts).fidelity;
    });

    double best = -1.0;
    for (size_t i = 0; i < kappa_grid.size(); i++) {
        for (size_t j = 0; j < cols; j++) {
            if (grid.fidelity[i][j] > best) {
                best = grid.fidelity[i][j];
                grid.argmax_kappa = i;
                grid.argmax_p = j;
            }
        }
    }
    return grid;
}

}  // namespace qnd
