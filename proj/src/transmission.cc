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

#include "qnd/transmission.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qnd/constants.h"

namespace qnd {

namespace {

constexpr complex kI{0.0, 1.0};

double ancilla_detuning(double omega, QubitState state, const CouplingSet &c) {
    return c.omega_r() + state_shift(state, c) - omega;
}

}  // namespace

QubitState parse_qubit_state(std::string_view text) {
    if (text == "g") {
        return QubitState::G;
    }
    if (text == "e") {
        return QubitState::E;
    }
    throw std::invalid_argument("qubit state must be 'g' or 'e', got '" + std::string(text) + "'");
}

double state_shift(QubitState state, const CouplingSet &c) {
    return -c.g_zz() * (1.0 + sigma_z(state));
}

const Peak &Spectrum::dominant_peak() const {
    if (peaks.empty()) {
        throw std::logic_error("spectrum has no peaks");
    }
    return *std::max_element(peaks.begin(), peaks.end(), [](const Peak &a, const Peak &b) {
        return a.height < b.height;
    });
}

complex t_empty(double omega, const CouplingSet &c) {
    return -1.0 / (1.0 + kI * (c.omega_r() - omega) / c.kappa());
}

double dispersive_shift(const CouplingSet &c) {
    double r = c.g_a() / c.g_zz();
    // sqrt(1 + r^2) - 1 without cancellation for small r.
    return c.g_zz() * r * r / (std::sqrt(1.0 + r * r) + 1.0);
}

complex t_linear(double omega, QubitState state, const CouplingSet &c) {
    complex t0 = t_empty(omega, c);
    if (c.g_a() == 0.0) {
        return t0;
    }
    double da = ancilla_detuning(omega, state, c);
    if (da == 0.0) {
        return 0.0;
    }
    return 1.0 / (1.0 / t0 + kI * c.gamma() / (2.0 * da));
}

double saturation_power(double omega, QubitState state, const CouplingSet &c, SaturationUnits units) {
    if (c.g_a() == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    double gamma = c.gamma();
    double da = ancilla_detuning(omega, state, c);
    double cavity_detuning = c.omega_r() - omega;
    double x = da / gamma;
    double y = cavity_detuning / gamma * da / c.kappa() - 0.5;
    double ps = gamma * (x * x + y * y);
    return units == SaturationUnits::Angular ? ps : ps / kTwoPi;
}

complex t_full(double omega, QubitState state, double power, const CouplingSet &c, SaturationUnits units) {
    if (power < 0.0) {
        throw std::domain_error("probe power must be non-negative");
    }
    complex t0 = t_empty(omega, c);
    if (c.g_a() == 0.0) {
        return t0;
    }
    double da = ancilla_detuning(omega, state, c);
    double ps = saturation_power(omega, state, c, units);
    double unsaturated = 1.0 / (1.0 + power / ps);
    return t0 * (1.0 - unsaturated / (1.0 - 2.0 * kI * da / (c.gamma() * t0)));
}

double transmitted_power(double omega, QubitState state, double power, const CouplingSet &c, SaturationUnits units) {
    return std::norm(t_full(omega, state, power, c, units)) * power;
}

double intracavity_photons(double omega, QubitState state, double power, const CouplingSet &c, SaturationUnits units) {
    return transmitted_power(omega, state, power, c, units) / c.kappa();
}

std::vector<Peak> find_peaks(std::span<const double> x, std::span<const double> y) {
    std::vector<Peak> peaks;
    if (x.size() != y.size()) {
        throw std::invalid_argument("find_peaks: x and y differ in length");
    }
    if (x.size() == 1) {
        peaks.push_back({x[0], y[0], 0});
        return peaks;
    }
    for (size_t i = 1; i + 1 < x.size(); i++) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) {
            continue;
        }
        // Parabola through the three samples (non-uniform spacing allowed).
        double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
        double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
        double d01 = (y1 - y0) / (x1 - x0);
        double d12 = (y2 - y1) / (x2 - x1);
        double a = (d12 - d01) / (x2 - x0);
        Peak p{x1, y1, i};
        if (a < 0.0) {
            double b = d01 - a * (x0 + x1);
            double xv = -b / (2.0 * a);
            if (xv >= x0 && xv <= x2) {
                p.omega = xv;
                p.height = y1 + (xv - x1) * (d01 + a * (xv - x0));
            }
        }
        peaks.push_back(p);
    }
    return peaks;
}

Spectrum spectrum(
    QubitState state, double power, std::span<const double> omega_grid, const CouplingSet &c, SaturationUnits units) {
    if (omega_grid.empty()) {
        throw std::domain_error("spectrum: empty frequency grid");
    }
    for (size_t i = 1; i < omega_grid.size(); i++) {
        if (!(omega_grid[i] > omega_grid[i - 1])) {
            throw std::domain_error("spectrum: frequency grid must be strictly increasing");
        }
    }
    Spectrum out{state, power, {}, {}};
    out.points.reserve(omega_grid.size());
    std::vector<double> ratios;
    ratios.reserve(omega_grid.size());
    for (double w : omega_grid) {
        complex t = t_full(w, state, power, c, units);
        out.points.push_back({w, t, std::norm(t)});
        ratios.push_back(std::norm(t));
    }
    out.peaks = find_peaks(omega_grid, ratios);
    return out;
}

std::vector<double> linspace(double lo, double hi, size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (size_t i = 0; i < n; i++) {
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return v;
}

std::vector<double> logspace(double lo, double hi, size_t n) {
    if (!(lo > 0.0) || !(hi > 0.0)) {
        throw std::domain_error("logspace bounds must be positive");
    }
    std::vector<double> v = linspace(std::log(lo), std::log(hi), n);
    for (double &x : v) {
        x = std::exp(x);
    }
    if (n > 1) {
        v.front() = lo;
        v.back() = hi;
    }
    return v;
}

double readout_frequency(const CouplingSet &c, double power, bool refine, SaturationUnits units) {
    double nominal = c.omega_r() + dispersive_shift(c);
    if (!refine || c.g_a() == 0.0) {
        return nominal;
    }
    double half_span = 0.5 * c.g_a();
    std::vector<double> grid = linspace(nominal - half_span, nominal + half_span, 2001);
    Spectrum s = spectrum(QubitState::E, power, grid, c, units);
    if (s.peaks.empty()) {
        return nominal;
    }
    return s.dominant_peak().omega;
}

}  // namespace qnd
