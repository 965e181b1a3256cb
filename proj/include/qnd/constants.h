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

#ifndef QND_CONSTANTS_H
#define QND_CONSTANTS_H

#include <numbers>

namespace qnd {

/// CODATA-2018 exact SI constants. Every physical conversion in the project
/// goes through this table.
namespace codata {
inline constexpr double planck = 6.62607015e-34;             // J s
inline constexpr double hbar = planck / (2.0 * std::numbers::pi);  // J s
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double boltzmann = 1.380649e-23;             // J / K
inline constexpr double flux_quantum = planck / (2.0 * elementary_charge);  // Wb
}  // namespace codata

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Cyclic MHz -> angular rad/s.
constexpr double mhz_to_angular(double mhz) { return kTwoPi * mhz * 1e6; }
/// Angular rad/s -> cyclic MHz.
constexpr double angular_to_mhz(double omega) { return omega / kTwoPi * 1e-6; }

inline constexpr double kPhotonsPerNs = 1e9;  // photons/ns -> photons/s
inline constexpr double kNanosecond = 1e-9;

}  // namespace qnd

#endif
