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

#ifndef QND_TEST_UTIL_H
#define QND_TEST_UTIL_H

#include <cmath>
#include <cstdint>

#include "qnd/constants.h"
#include "qnd/device.h"

namespace qnd_test {

/// Small deterministic generator for property tests. Each test seeds its own.
class Gen {
   public:
    explicit Gen(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    size_t index(size_t n) { return static_cast<size_t>(next() % n); }

    /// Couplings drawn over the resolved, dispersive corner of parameter space.
    qnd::CouplingSet couplings() {
        double g_zz = uniform(100.0, 500.0);
        double g_a = uniform(20.0, 0.9 * g_zz);
        double kappa = uniform(5.0, 0.9 * g_a);
        return qnd::CouplingSet::from_mhz(g_zz, g_a, kappa, uniform(4000.0, 9000.0));
    }

   private:
    uint64_t state_;
};

inline qnd::CouplingSet reference_couplings() { return qnd::CouplingSet::from_mhz(250.0, 150.0, 40.0); }

}  // namespace qnd_test

#endif
