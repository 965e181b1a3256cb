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

#include "qnd/photostatistics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qnd/constants.h"
#include "qnd/parallel.h"

namespace qnd {

namespace {

constexpr double kPoissonNoiseThreshold = 1e-12;
constexpr double kTailTarget = 1e-13;
constexpr size_t kMaxCutoff = 50'000'000;
constexpr size_t kSampleChunks = 16;

[[noreturn]] void fail_evaluation(double s, double m, size_t n) {
    std::stringstream ss;
    ss << "count distribution evaluation became non-finite at n=" << n << " for signal mean s=" << s
       << ", noise mean m=" << m;
    throw std::domain_error(ss.str());
}

// Log-probabilities are produced term by term as log P(n) = log P(n-1) +
// log(ratio_n). The tail check assumes the ratio is non-increasing past the
// mode, which holds for both the Poisson and the displaced thermal laws.
template <typename NextLogRatio>
std::vector<double> evaluate_until_tail(
    double s, double m, double log_p0, size_t initial_cutoff, NextLogRatio &&next_log_ratio) {
    std::vector<double> probs;
    probs.reserve(initial_cutoff + 1);
    double log_p = log_p0;
    probs.push_back(std::exp(log_p));
    double mean = s + m;
    size_t cutoff = initial_cutoff;
    while (true) {
        double log_ratio = 0.0;
        for (size_t n = probs.size(); n <= cutoff; n++) {
            log_ratio = next_log_ratio(n);
            log_p += log_ratio;
            if (std::isnan(log_p) || log_p > 1e-9) {
                fail_evaluation(s, m, n);
            }
            probs.push_back(std::exp(log_p));
        }
        double ratio = std::exp(log_ratio);
        bool past_mode = static_cast<double>(cutoff) > mean && ratio < 1.0;
        if (past_mode) {
            double tail = std::exp(log_p) * ratio / (1.0 - ratio);
            if (tail < kTailTarget || log_p == -std::numeric_limits<double>::infinity()) {
                break;
            }
        }
        if (cutoff >= kMaxCutoff) {
            fail_evaluation(s, m, cutoff);
        }
        cutoff = std::min(kMaxCutoff, cutoff + cutoff / 2 + 8);
    }
    // Drop the trailing run of exact zeros.
    while (probs.size() > 1 && probs.back() == 0.0) {
        probs.pop_back();
    }
    return probs;
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

void DetectionChain::check() const {
    if (!(noise_temperature >= 0.0) || !std::isfinite(noise_temperature)) {
        throw std::invalid_argument("noise temperature must be non-negative");
    }
    if (!(bandwidth > 0.0) || !(tau > 0.0) || !(carrier > 0.0)) {
        throw std::invalid_argument("bandwidth, integration time and carrier must be strictly positive");
    }
}

DetectionChain DetectionChain::with_default_bandwidth(double noise_temperature, double tau, double carrier) {
    DetectionChain chain{noise_temperature, 0.5 / tau, tau, carrier};
    chain.check();
    return chain;
}

std::vector<RegimeWarning> validate(const DetectionChain &chain) {
    std::vector<RegimeWarning> out;
    if (chain.tau * chain.bandwidth < 0.5) {
        std::stringstream ss;
        ss << "integration time " << chain.tau << " s is shorter than the correlation time 1/(2B) = "
           << 0.5 / chain.bandwidth << " s";
        out.push_back({RegimeWarningKind::CorrelationTime, ss.str()});
    }
    return out;
}

double PhotonDistribution::total() const {
    double sum = 0.0;
    for (double p : probs) {
        sum += p;
    }
    return sum;
}

double PhotonDistribution::cdf(size_t n) const {
    double sum = 0.0;
    for (size_t k = 0; k <= n && k < probs.size(); k++) {
        sum += probs[k];
    }
    return sum;
}

PhotonDistribution PhotonDistribution::from_probabilities(std::vector<double> probs) {
    PhotonDistribution d;
    d.probs = std::move(probs);
    Moments mo = moments(d);
    d.mean = mo.mean;
    d.variance = mo.variance;
    return d;
}

double noise_flux(const DetectionChain &chain) {
    chain.check();
    return codata::boltzmann * chain.noise_temperature / (codata::hbar * chain.carrier) * chain.bandwidth;
}

Moments displaced_thermal_moments(double s, double m) {
    return {s + m, m * (m + 1.0) + s * (1.0 + 2.0 * m)};
}

PhotonDistribution displaced_thermal(double s, double m) {
    if (!(s >= 0.0) || !(m >= 0.0) || !std::isfinite(s) || !std::isfinite(m)) {
        std::stringstream ss;
        ss << "signal and noise means must be finite and non-negative, got s=" << s << ", m=" << m;
        throw std::domain_error(ss.str());
    }
    Moments closed = displaced_thermal_moments(s, m);
    auto initial_cutoff = static_cast<size_t>(std::ceil(closed.mean + 10.0 * std::sqrt(closed.variance))) + 8;

    std::vector<double> probs;
    if (m < kPoissonNoiseThreshold) {
        if (s == 0.0) {
            probs = {1.0};
        } else {
            double log_s = std::log(s);
            probs = evaluate_until_tail(s, m, -s, initial_cutoff, [&](size_t n) {
                return log_s - std::log(static_cast<double>(n));
            });
        }
    } else {
        // P(n) / P(n-1) = q L_n(x) / L_{n-1}(x), q = m / (1+m), x = -s / (m (1+m)).
        // (n+1) L_{n+1} = (2n+1-x) L_n - n L_{n-1} becomes a recursion on the
        // ratio r_n = L_n / L_{n-1}, which stays positive for x <= 0.
        double log_q = std::log(m) - std::log1p(m);
        double x = -s / (m * (1.0 + m));
        double r = 1.0;
        probs = evaluate_until_tail(s, m, -s / (1.0 + m) - std::log1p(m), initial_cutoff, [&](size_t n) {
            if (n == 1) {
                r = 1.0 - x;
            } else {
                double k = static_cast<double>(n - 1);
                r = ((2.0 * k + 1.0 - x) - k / r) / (k + 1.0);
            }
            return log_q + std::log(r);
        });
    }
    return PhotonDistribution::from_probabilities(std::move(probs));
}

PhotonDistribution count_distribution(double p_t, double noise, double tau) {
    if (!(tau > 0.0)) {
        throw std::domain_error("integration time must be positive");
    }
    if (!(p_t >= 0.0) || !(noise >= 0.0)) {
        throw std::domain_error("signal and noise fluxes must be non-negative");
    }
    return displaced_thermal(p_t * tau, noise * tau);
}

Moments moments(const PhotonDistribution &dist) {
    double total = 0.0, mean = 0.0;
    for (size_t n = 0; n < dist.probs.size(); n++) {
        total += dist.probs[n];
        mean += static_cast<double>(n) * dist.probs[n];
    }
    if (total <= 0.0) {
        return {0.0, 0.0};
    }
    mean /= total;
    double var = 0.0;
    for (size_t n = 0; n < dist.probs.size(); n++) {
        double d = static_cast<double>(n) - mean;
        var += d * d * dist.probs[n];
    }
    return {mean, var / total};
}

PhotonDistribution sample_displaced_thermal(double s, double m, uint64_t n_samples, uint64_t seed) {
    if (n_samples < 1) {
        throw std::domain_error("sample_counts needs at least one sample");
    }
    if (!(s >= 0.0) || !(m >= 0.0)) {
        throw std::domain_error("signal and noise means must be non-negative");
    }
    std::vector<std::vector<uint64_t>> chunk_counts(kSampleChunks);
    const double center = std::sqrt(s);
    const double quadrature_sd = std::sqrt(0.5 * m);
    parallel_for(kSampleChunks, [&](size_t chunk) {
        uint64_t begin = n_samples * chunk / kSampleChunks;
        uint64_t end = n_samples * (chunk + 1) / kSampleChunks;
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(chunk)));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::poisson_distribution<uint64_t> poisson;
        auto &counts = chunk_counts[chunk];
        for (uint64_t i = begin; i < end; i++) {
            double re = center, im = 0.0;
            if (quadrature_sd > 0.0) {
                re += quadrature_sd * gauss(rng);
                im += quadrature_sd * gauss(rng);
            }
            double intensity = re * re + im * im;
            uint64_t n = intensity > 0.0 ? poisson(rng, std::poisson_distribution<uint64_t>::param_type(intensity)) : 0;
            if (n >= counts.size()) {
                counts.resize(n + 1, 0);
            }
            counts[n]++;
        }
    });
    std::vector<uint64_t> merged;
    for (const auto &counts : chunk_counts) {
        if (counts.size() > merged.size()) {
            merged.resize(counts.size(), 0);
        }
        for (size_t n = 0; n < counts.size(); n++) {
            merged[n] += counts[n];
        }
    }
    std::vector<double> probs(merged.size());
    for (size_t n = 0; n < merged.size(); n++) {
        probs[n] = static_cast<double>(merged[n]) / static_cast<double>(n_samples);
    }
    return PhotonDistribution::from_probabilities(std::move(probs));
}

PhotonDistribution sample_counts(double p_t, double noise, double tau, uint64_t n_samples, uint64_t seed) {
    return sample_displaced_thermal(p_t * tau, noise * tau, n_samples, seed);
}

double total_variation(const PhotonDistribution &a, const PhotonDistribution &b) {
    size_t n = std::max(a.probs.size(), b.probs.size());
    double sum = 0.0;
    for (size_t k = 0; k < n; k++) {
        sum += std::abs(a.at(k) - b.at(k));
    }
    return 0.5 * sum;
}

MonteCarloReport monte_carlo_check(double p_t, double noise, double tau, uint64_t n_samples, uint64_t seed) {
    PhotonDistribution exact = count_distribution(p_t, noise, tau);
    PhotonDistribution sampled = sample_counts(p_t, noise, tau, n_samples, seed);
    return {p_t * tau, noise * tau, tau, n_samples, seed, total_variation(exact, sampled)};
}

}  // namespace qnd
