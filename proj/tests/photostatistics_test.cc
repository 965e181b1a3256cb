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

#include "gtest/gtest.h"

#include "qnd/constants.h"
#include "test_util.h"

using namespace qnd;

namespace {

PhotonDistribution poisson(double s, size_t n_max) {
    std::vector<double> p(n_max + 1);
    for (size_t n = 0; n <= n_max; n++) {
        p[n] = std::exp(-s + n * std::log(s) - std::lgamma(n + 1.0));
    }
    return PhotonDistribution::from_probabilities(std::move(p));
}

PhotonDistribution bose_einstein(double m, size_t n_max) {
    std::vector<double> p(n_max + 1);
    for (size_t n = 0; n <= n_max; n++) {
        p[n] = std::pow(m / (1.0 + m), static_cast<double>(n)) / (1.0 + m);
    }
    return PhotonDistribution::from_probabilities(std::move(p));
}

}  // namespace

TEST(photostatistics, laguerre_form_frozen) {
    PhotonDistribution d = displaced_thermal(5.0, 0.5);
    const std::pair<size_t, double> expected[] = {
        {0, 0.023782662231501598}, {1, 0.060777914591615196},   {3, 0.12071848808042947},
        {5, 0.12445718858240159},  {10, 0.038903628661240219},  {20, 0.00038648635129356051},
        {40, 1.1309483107172512e-9},
    };
    for (auto [n, p] : expected) {
        EXPECT_NEAR(d.at(n), p, 1e-12 * p) << "n=" << n;
    }
}

TEST(photostatistics, large_counts_frozen) {
    EXPECT_NEAR(displaced_thermal(1000.0, 100.0).at(1100), 0.00085346431326692926, 1e-11 * 8.5e-4);
    EXPECT_NEAR(displaced_thermal(200.0, 0.01).at(300), 1.485545282021661e-11, 1e-9 * 1.49e-11);
}

TEST(photostatistics, noise_flux_frozen) {
    double carrier = mhz_to_angular(7000.0);
    EXPECT_NEAR(noise_flux({4.0, 10e6, 50e-9, carrier}), 119066394.99044327, 1e-4);
    EXPECT_NEAR(noise_flux({0.14, 50e6, 10e-9, carrier}), 20836619.123327573, 1e-5);
    EXPECT_EQ(noise_flux({0.0, 50e6, 10e-9, carrier}), 0.0);
}

TEST(photostatistics, normalization_and_moments) {
    qnd_test::Gen gen(51);
    for (int k = 0; k < 200; k++) {
        double s = gen.log_uniform(1e-6, 1000.0);
        double m = gen.log_uniform(1e-6, 100.0);
        PhotonDistribution d = displaced_thermal(s, m);
        Moments closed = displaced_thermal_moments(s, m);
        EXPECT_NEAR(d.total(), 1.0, 1e-9) << "s=" << s << " m=" << m;
        EXPECT_NEAR(d.mean, closed.mean, 1e-8 * std::max(1.0, closed.mean));
        EXPECT_NEAR(d.variance, closed.variance, 1e-7 * std::max(1.0, closed.variance));
        for (double p : d.probs) {
            ASSERT_GE(p, 0.0);
        }
    }
}

TEST(photostatistics, limit_branches) {
    for (double s : {0.3, 5.0, 60.0}) {
        PhotonDistribution exact = poisson(s, displaced_thermal(s, 0.0).cutoff());
        EXPECT_LT(total_variation(displaced_thermal(s, 0.0), exact), 1e-12);
        EXPECT_LT(total_variation(displaced_thermal(s, 1e-9), exact), 1e-8);
    }
    for (double m : {0.05, 0.5, 5.0}) {
        PhotonDistribution d = displaced_thermal(1e-9, m);
        EXPECT_LT(total_variation(d, bose_einstein(m, d.cutoff())), 1e-8);
    }
    PhotonDistribution vacuum = displaced_thermal(0.0, 0.0);
    EXPECT_EQ(vacuum.probs.size(), 1u);
    EXPECT_EQ(vacuum.at(0), 1.0);
}

TEST(photostatistics, count_distribution_scales_fluxes) {
    PhotonDistribution a = count_distribution(5e8, 5e7, 10e-9);
    PhotonDistribution b = displaced_thermal(5.0, 0.5);
    EXPECT_LT(total_variation(a, b), 1e-14);
}

TEST(photostatistics, rejects_invalid_means) {
    EXPECT_THROW(displaced_thermal(-1.0, 0.5), std::domain_error);
    EXPECT_THROW(displaced_thermal(1.0, std::nan("")), std::domain_error);
    EXPECT_THROW(count_distribution(1.0, 1.0, 0.0), std::domain_error);
    try {
        displaced_thermal(-2.5, 0.5);
    } catch (const std::domain_error &ex) {
        EXPECT_NE(std::string(ex.what()).find("s=-2.5"), std::string::npos);
    }
}

TEST(photostatistics, sampler_is_deterministic) {
    PhotonDistribution a = sample_displaced_thermal(5.0, 0.5, 20000, 7);
    PhotonDistribution b = sample_displaced_thermal(5.0, 0.5, 20000, 7);
    PhotonDistribution c = sample_displaced_thermal(5.0, 0.5, 20000, 8);
    EXPECT_EQ(a.probs, b.probs);
    EXPECT_NE(a.probs, c.probs);
    EXPECT_NEAR(a.total(), 1.0, 1e-12);
}

TEST(photostatistics, sampler_matches_moments) {
    // Mean within 4 standard errors of the closed form.
    qnd_test::Gen gen(53);
    for (int k = 0; k < 6; k++) {
        double s = gen.uniform(0.1, 20.0), m = gen.uniform(0.01, 3.0);
        const uint64_t n = 200000;
        PhotonDistribution d = sample_displaced_thermal(s, m, n, gen.next());
        Moments closed = displaced_thermal_moments(s, m);
        EXPECT_NEAR(d.mean, closed.mean, 4.0 * std::sqrt(closed.variance / n));
        double tv = total_variation(d, displaced_thermal(s, m));
        EXPECT_LT(tv, 0.02);
    }
}

TEST(photostatistics, monte_carlo_report) {
    MonteCarloReport r = monte_carlo_check(5e8, 5e7, 10e-9, 100000, 12345);
    EXPECT_NEAR(r.signal_mean, 5.0, 1e-12);
    EXPECT_NEAR(r.noise_mean, 0.5, 1e-12);
    EXPECT_EQ(r.seed, 12345u);
    EXPECT_LT(r.tv_distance, 0.02);
    EXPECT_THROW(sample_displaced_thermal(1.0, 1.0, 0, 1), std::domain_error);
}

TEST(photostatistics, chain_defaults_and_warnings) {
    DetectionChain chain = DetectionChain::with_default_bandwidth(0.14, 60e-9, mhz_to_angular(7000.0));
    EXPECT_NEAR(chain.bandwidth, 1.0 / 120e-9, 1e-3);
    EXPECT_TRUE(validate(chain).empty());
    DetectionChain narrow{0.14, 1e6, 10e-9, mhz_to_angular(7000.0)};
    auto w = validate(narrow);
    ASSERT_EQ(w.size(), 1u);
    EXPECT_EQ(w[0].kind, RegimeWarningKind::CorrelationTime);
    EXPECT_THROW((DetectionChain{-1.0, 1e6, 1e-8, 1.0}.check()), std::invalid_argument);
    EXPECT_THROW((DetectionChain{1.0, 0.0, 1e-8, 1.0}.check()), std::invalid_argument);
}

TEST(photostatistics, cdf_and_accessors) {
    PhotonDistribution d = displaced_thermal(2.0, 0.1);
    EXPECT_NEAR(d.cdf(d.cutoff()), d.total(), 1e-15);
    EXPECT_EQ(d.at(d.cutoff() + 10), 0.0);
    EXPECT_NEAR(d.cdf(0), d.at(0), 0.0);
}
