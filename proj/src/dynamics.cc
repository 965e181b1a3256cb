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

#include "qnd/dynamics.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qnd/ode.h"

namespace qnd {

namespace {

using Vec = OdeVector<7>;

// Layout: sigma_z_a, Re/Im sigma_-a, Re/Im sigma_-qb, Re/Im a.
Vec pack(const SemiclassicalState &s) {
    return {
        s.sigma_z_a,
        s.sigma_minus_a.real(),
        s.sigma_minus_a.imag(),
        s.sigma_minus_qb.real(),
        s.sigma_minus_qb.imag(),
        s.a.real(),
        s.a.imag(),
    };
}

SemiclassicalState unpack(const Vec &y) {
    return SemiclassicalState{
        .sigma_z_a = y[0],
        .sigma_minus_a = {y[1], y[2]},
        .sigma_minus_qb = {y[3], y[4]},
        .a = {y[5], y[6]},
    };
}

constexpr double kSteadyWindowKappa = 20.0;

}  // namespace

Trajectory integrate(QubitState state, const Probe &probe, const CouplingSet &c, const IntegrationOptions &opts) {
    if (probe.power < 0.0) {
        throw std::domain_error("integrate: probe power must be non-negative");
    }
    if (opts.t_end * c.kappa() < 20.0) {
        throw std::domain_error("integrate: t_end must be at least 20 / kappa");
    }
    if (!(opts.tol >= 1e-12 && opts.tol <= 1e-4)) {
        throw std::domain_error("integrate: tol must lie in [1e-12, 1e-4]");
    }

    const double cavity_detuning = c.omega_r() - probe.omega;
    const double ancilla_detuning = cavity_detuning + state_shift(state, c);
    const double g_a = c.g_a();
    const double g_zz = c.g_zz();
    const double kappa = c.kappa();
    const double drive = std::sqrt(kappa * probe.power);

    auto rhs = [=](double, const Vec &y, Vec &dy) {
        const double sz = y[0];
        const double sr = y[1], si = y[2];
        const double qr = y[3], qi = y[4];
        const double ar = y[5], ai = y[6];
        // sigma_+ a + sigma_- a* = 2 Re(conj(sigma_-) a)
        dy[0] = -4.0 * g_a * (sr * ar + si * ai);
        // -i D sigma + g_a sz a
        dy[1] = ancilla_detuning * si + g_a * sz * ar;
        dy[2] = -ancilla_detuning * sr + g_a * sz * ai;
        // i g_zz (1 + sz) q
        const double phase_rate = g_zz * (1.0 + sz);
        dy[3] = -phase_rate * qi;
        dy[4] = phase_rate * qr;
        // -i Dc a - kappa a + g_a sigma + i drive
        dy[5] = cavity_detuning * ai - kappa * ar + g_a * sr;
        dy[6] = -cavity_detuning * ar - kappa * ai + g_a * si + drive;
    };

    Trajectory traj;
    traj.kappa = kappa;
    auto observer = [&](double t, const Vec &y) {
        if (t >= opts.record_from) {
            traj.times.push_back(t);
            traj.states.push_back(unpack(y));
        }
    };
    OdeTolerance tol{.relative = opts.tol, .absolute = 1e-12};
    Vec y0 = pack(SemiclassicalState{});
    try {
        Vec y_end = integrate_dop853<7>(rhs, y0, 0.0, opts.t_end, tol, observer);
        if (traj.times.empty() || traj.times.back() != opts.t_end) {
            traj.times.push_back(opts.t_end);
            traj.states.push_back(unpack(y_end));
        }
    } catch (const StepSizeUnderflow<7> &ex) {
        throw IntegrationFailure(ex.what(), ex.t, unpack(ex.y));
    }

    double window = std::min(kSteadyWindowKappa / kappa, opts.t_end - traj.times.front());
    if (window * kappa >= 5.0) {
        SteadyState ss = steady_state(traj, window);
        traj.converged = ss.converged;
        traj.steady_value = ss.value;
    } else {
        traj.converged = false;
        traj.steady_value = traj.states.back();
    }
    return traj;
}

SteadyState steady_state(const Trajectory &traj, double window) {
    if (traj.times.empty()) {
        throw std::domain_error("steady_state: empty trajectory");
    }
    if (!(window * traj.kappa >= 5.0 * (1.0 - 1e-12))) {
        throw std::domain_error("steady_state: window must be at least 5 / kappa");
    }
    const double t_last = traj.times.back();
    const double t_start = t_last - window;
    if (traj.times.front() > t_start * (1.0 + 1e-12)) {
        std::stringstream ss;
        ss << "steady_state: window " << window << " s exceeds recorded span " << (t_last - traj.times.front()) << " s";
        throw std::domain_error(ss.str());
    }

    size_t first = 0;
    while (first + 1 < traj.times.size() && traj.times[first + 1] <= t_start) {
        first++;
    }
    if (first + 1 == traj.times.size()) {
        // A single sample spans the whole window; treat as constant.
        return {traj.states.back(), true};
    }

    // Trapezoidal time averages over [times[first], t_last].
    double span = 0.0, mean_abs = 0.0;
    double sz = 0.0;
    complex sa = 0.0, sq = 0.0, a = 0.0;
    for (size_t i = first; i + 1 < traj.times.size(); i++) {
        double dt = traj.times[i + 1] - traj.times[i];
        const auto &u = traj.states[i];
        const auto &v = traj.states[i + 1];
        span += dt;
        mean_abs += 0.5 * dt * (std::abs(u.a) + std::abs(v.a));
        sz += 0.5 * dt * (u.sigma_z_a + v.sigma_z_a);
        sa += 0.5 * dt * (u.sigma_minus_a + v.sigma_minus_a);
        sq += 0.5 * dt * (u.sigma_minus_qb + v.sigma_minus_qb);
        a += 0.5 * dt * (u.a + v.a);
    }
    mean_abs /= span;
    double var = 0.0;
    for (size_t i = first; i + 1 < traj.times.size(); i++) {
        double dt = traj.times[i + 1] - traj.times[i];
        double du = std::abs(traj.states[i].a) - mean_abs;
        double dv = std::abs(traj.states[i + 1].a) - mean_abs;
        var += 0.5 * dt * (du * du + dv * dv);
    }
    double stddev = std::sqrt(var / span);

    bool converged = stddev < 1e-6 * std::max(mean_abs, 1.0);
    if (converged) {
        return {traj.states.back(), true};
    }
    return {SemiclassicalState{sz / span, sa / span, sq / span, a / span}, false};
}

complex t_from_ode(const SemiclassicalState &steady, const Probe &probe, const CouplingSet &c) {
    if (!(probe.power > 0.0)) {
        throw std::domain_error("t_from_ode: transmission undefined for zero drive");
    }
    return complex{0.0, 1.0} * std::sqrt(c.kappa()) * steady.a / std::sqrt(probe.power);
}

complex reflected_field(const SemiclassicalState &state, const Probe &probe, const CouplingSet &c) {
    return std::sqrt(probe.power) + complex{0.0, 1.0} * std::sqrt(c.kappa()) * state.a;
}

OdeTransmission steady_transmission(
    QubitState state, const Probe &probe, const CouplingSet &c, double tol, double t_end_kappa) {
    double t_end = t_end_kappa / c.kappa();
    IntegrationOptions opts{
        .t_end = t_end,
        .tol = tol,
        .record_from = t_end - 1.5 * kSteadyWindowKappa / c.kappa(),
    };
    Trajectory traj = integrate(state, probe, c, opts);
    return {t_from_ode(traj.steady_value, probe, c), traj.converged};
}

}  // namespace qnd
