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

#ifndef QND_PHOTOSTATISTICS_H
#define QND_PHOTOSTATISTICS_H

#include <cstdint>
#include <vector>

#include "qnd/device.h"

namespace qnd {

/// Amplifier chain referred to its input: a white thermal field at the noise
/// temperature, integrated over tau within bandwidth B.
struct DetectionChain {
    double noise_temperature;  // K
    double bandwidth;          // Hz
    double tau;                // s
    double carrier;            // rad/s

    /// Throws std::invalid_argument unless T_N >= 0 and B, tau, carrier > 0.
    void check() const;
    /// Bandwidth defaults to 1 / (2 tau) when only the integration time is known.
    static DetectionChain with_default_bandwidth(double noise_temperature, double tau, double carrier);
};

std::vector<RegimeWarning> validate(const DetectionChain &chain);

/// Probability vector over photon counts 0..cutoff with cached moments.
struct PhotonDistribution {
    std::vector<double> probs;
    double mean = 0.0;
    double variance = 0.0;

    size_t cutoff() const { return probs.empty() ? 0 : probs.size() - 1; }
    double total() const;
    double at(size_t n) const { return n < probs.size() ? probs[n] : 0.0; }
    /// P(count <= n).
    double cdf(size_t n) const;

    /// Wraps a probability vector and computes its moments.
    static PhotonDistribution from_probabilities(std::vector<double> probs);
};

struct Moments {
    double mean;
    double variance;
};

/// Johnson-Nyquist noise flux (k_B T_N / hbar carrier) B in photons/s.
double noise_flux(const DetectionChain &chain);

/// Count law of a thermal field with mean noise_mean photons displaced by a
/// coherent amplitude of mean signal_mean photons:
///
///   P(n) = m^n / (1+m)^(n+1) exp(-s / (1+m)) L_n(-s / (m (1+m)))
///
/// evaluated in log space through the ratio L_n / L_{n-1} so that neither
/// the prefactor nor L_n is ever formed. Falls back to the Poisson law for
/// m < 1e-12. Truncated tail mass is below 1e-12.
/// Throws std::domain_error on invalid input or a non-finite evaluation.
PhotonDistribution displaced_thermal(double signal_mean, double noise_mean);

/// displaced_thermal(p_t tau, noise tau).
PhotonDistribution count_distribution(double p_t, double noise, double tau);

Moments moments(const PhotonDistribution &dist);
/// Closed-form moments of the displaced thermal law: s + m and
/// m (m + 1) + s (1 + 2m).
Moments displaced_thermal_moments(double signal_mean, double noise_mean);

/// Monte Carlo draw from the P-representation: alpha = sqrt(s) + complex
/// Gaussian with per-quadrature variance m / 2, then n ~ Poisson(|alpha|^2).
///
/// Samples are split into a fixed number of chunks, each with its own
/// mt19937_64 seeded by splitmix64(seed, chunk), and merged in chunk order,
/// so the result depends only on the arguments.
PhotonDistribution sample_counts(double p_t, double noise, double tau, uint64_t n_samples, uint64_t seed);
PhotonDistribution sample_displaced_thermal(double signal_mean, double noise_mean, uint64_t n_samples, uint64_t seed);

/// Half the L1 distance, missing entries treated as zero.
double total_variation(const PhotonDistribution &a, const PhotonDistribution &b);

struct MonteCarloReport {
    double signal_mean;
    double noise_mean;
    double tau;
    uint64_t n_samples;
    uint64_t seed;
    double tv_distance;
};

MonteCarloReport monte_carlo_check(double p_t, double noise, double tau, uint64_t n_samples, uint64_t seed);

}  // namespace qnd

#endif
