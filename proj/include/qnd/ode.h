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

#ifndef QND_ODE_H
#define QND_ODE_H

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace qnd {

template <size_t N>
using OdeVector = std::array<double, N>;

/// Raised when the step size collapses. Carries the last accepted point.
template <size_t N>
struct StepSizeUnderflow : std::runtime_error {
    StepSizeUnderflow(double t, const OdeVector<N> &y, double h)
        : std::runtime_error("adaptive step size underflow at t=" + std::to_string(t) + " (h=" + std::to_string(h) + ")"),
          t(t),
          y(y) {
    }
    double t;
    OdeVector<N> y;
};

struct OdeTolerance {
    double relative = 1e-9;
    double absolute = 1e-12;
    double max_step = 0.0;  // 0 means unbounded
    size_t max_steps = 50'000'000;
};

/// Dormand-Prince 5(4) embedded pair with local extrapolation and FSAL.
///
/// Deterministic: the step sequence depends only on the inputs. The observer
/// is called as observer(t, y) for the initial point and after every accepted
/// step. Returns the state at t_end.
template <size_t N, typename Rhs, typename Observer>
OdeVector<N> integrate_dopri5(
    Rhs &&rhs, OdeVector<N> y, double t0, double t_end, const OdeTolerance &tol, Observer &&observer) {
    // Butcher tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // Difference between the 5th and 4th order weights.
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    observer(t0, y);
    if (t_end <= t0) {
        return y;
    }

    OdeVector<N> k1, k2, k3, k4, k5, k6, k7, tmp, y_new;
    rhs(t0, y, k1);

    // Initial step from the derivative scale.
    double d0 = 0.0, d1 = 0.0;
    for (size_t i = 0; i < N; i++) {
        double sc = tol.absolute + tol.relative * std::abs(y[i]);
        d0 += (y[i] / sc) * (y[i] / sc);
        d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * (t_end - t0) : 0.01 * d0 / d1;
    h = std::min(h, t_end - t0);
    if (tol.max_step > 0.0) {
        h = std::min(h, tol.max_step);
    }

    constexpr double safety = 0.9, min_factor = 0.2, max_factor = 10.0;
    double t = t0;
    bool last_rejected = false;
    size_t steps = 0;
    while (t < t_end) {
        if (++steps > tol.max_steps) {
            throw StepSizeUnderflow<N>(t, y, h);
        }
        bool final_step = false;
        if (t + h >= t_end) {
            h = t_end - t;
            final_step = true;
        }
        if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::abs(t)) {
            throw StepSizeUnderflow<N>(t, y, h);
        }

        for (size_t i = 0; i < N; i++) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, tmp, k2);
        for (size_t i = 0; i < N; i++) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, tmp, k3);
        for (size_t i = 0; i < N; i++) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, tmp, k4);
        for (size_t i = 0; i < N; i++) tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, tmp, k5);
        for (size_t i = 0; i < N; i++)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, tmp, k6);
        for (size_t i = 0; i < N; i++)
            y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        double t_new = final_step ? t_end : t + h;
        rhs(t_new, y_new, k7);

        double err = 0.0;
        for (size_t i = 0; i < N; i++) {
            double sc = tol.absolute + tol.relative * std::max(std::abs(y[i]), std::abs(y_new[i]));
            double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]) / sc;
            err += ei * ei;
        }
        err = std::sqrt(err / N);

        if (err <= 1.0) {
            t = t_new;
            y = y_new;
            k1 = k7;
            observer(t, y);
            double factor = err == 0.0 ? max_factor : std::clamp(safety * std::pow(err, -0.2), min_factor, max_factor);
            if (last_rejected) {
                factor = std::min(factor, 1.0);
            }
            h *= factor;
            last_rejected = false;
        } else {
            h *= std::max(min_factor, safety * std::pow(err, -0.2));
            last_rejected = true;
        }
        if (tol.max_step > 0.0) {
            h = std::min(h, tol.max_step);
        }
    }
    return y;
}

/// Dormand-Prince 8(5,3) with Hairer's combined 5th/3rd order error
/// estimate. Same contract as integrate_dopri5; far fewer steps at tight
/// tolerances, which keeps accumulated drift of conserved quantities small.
template <size_t N, typename Rhs, typename Observer>
OdeVector<N> integrate_dop853(
    Rhs &&rhs, OdeVector<N> y, double t0, double t_end, const OdeTolerance &tol, Observer &&observer) {
    constexpr double c2 = 0.05260015195876773187856, c3 = 0.07890022793815159781784,
                     c4 = 0.11835034190722739672676, c5 = 0.28164965809277260327324,
                     c6 = 0.33333333333333333333333, c7 = 0.25, c8 = 0.30769230769230769230769,
                     c9 = 0.65128205128205128205128, c10 = 0.6, c11 = 0.85714285714285714285714;
    constexpr double a21 = 0.05260015195876773187856;
    constexpr double a31 = 0.01972505698453789945446, a32 = 0.05917517095361369836338;
    constexpr double a41 = 0.02958758547680684918169, a43 = 0.08876275643042054754507;
    constexpr double a51 = 0.24136513415926668550237, a53 = -0.88454947932828608534486,
                     a54 = 0.92483400326179200311574;
    constexpr double a61 = 0.03703703703703703703704, a64 = 0.17082860872947387127960,
                     a65 = 0.12546768756682242501669;
    constexpr double a71 = 0.037109375, a74 = 0.17025221101954403931498, a75 = 0.06021653898045596068502,
                     a76 = -0.017578125;
    constexpr double a81 = 0.03709200011850479271088, a84 = 0.17038392571223999381021,
                     a85 = 0.10726203044637328465181, a86 = -0.01531943774862440175279,
                     a87 = 0.00827378916381402288758;
    constexpr double a91 = 0.62411095871607571711443, a94 = -3.36089262944694129406857,
                     a95 = -0.86821934684172600681819, a96 = 27.5920996994467083049416,
                     a97 = 20.1540675504778934086187, a98 = -43.4898841810699588477366;
    constexpr double a101 = 0.47766253643826436589043, a104 = -2.48811461997166764192642,
                     a105 = -0.59029082683684299637145, a106 = 21.2300514481811942347289,
                     a107 = 15.2792336328824235832597, a108 = -33.2882109689848629194453,
                     a109 = -0.02033120170850862613582;
    constexpr double a111 = -0.93714243008598732571704, a114 = 5.18637242884406370830024,
                     a115 = 1.09143734899672957818500, a116 = -8.14978701074692612513997,
                     a117 = -18.5200656599969598641566, a118 = 22.7394870993505042818970,
                     a119 = 2.49360555267965238987089, a1110 = -3.04676447189821950038237;
    constexpr double a121 = 2.27331014751653820792360, a124 = -10.5344954667372501984067,
                     a125 = -2.00087205822486249909676, a126 = -17.9589318631187989172766,
                     a127 = 27.9488845294199600508500, a128 = -2.85899827713502369474066,
                     a129 = -8.87285693353062954433549, a1210 = 12.3605671757943030647266,
                     a1211 = 0.64339274601576353035597;
    constexpr double b1 = 0.05429373411656876223805, b6 = 4.45031289275240888144114,
                     b7 = 1.89151789931450038304282, b8 = -5.80120396001058478146721,
                     b9 = 0.31116436695781989440892, b10 = -0.15216094966251607855618,
                     b11 = 0.20136540080403034837478, b12 = 0.04471061572777259051769;
    constexpr double bhh1 = 0.24409448818897637795276, bhh2 = 0.73384668828161185734136,
                     bhh3 = 0.02205882352941176470588;
    constexpr double er1 = 0.01312004499419488073250, er6 = -1.22515644637620444072057,
                     er7 = -0.49575894965725019152141, er8 = 1.66437718245498653696153,
                     er9 = -0.35032884874997368168865, er10 = 0.33417911871301747902973,
                     er11 = 0.08192320648511571246571, er12 = -0.02235530786388629525884;

    observer(t0, y);
    if (t_end <= t0) {
        return y;
    }

    OdeVector<N> k1, k2, k3, k4, k5, k6, k7, k8, k9, k10, k11, k12, sum, tmp, y_new;
    rhs(t0, y, k1);

    double d0 = 0.0, d1 = 0.0;
    for (size_t i = 0; i < N; i++) {
        double sc = tol.absolute + tol.relative * std::abs(y[i]);
        d0 += (y[i] / sc) * (y[i] / sc);
        d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * (t_end - t0) : 0.01 * d0 / d1;
    h = std::min(h, t_end - t0);
    if (tol.max_step > 0.0) {
        h = std::min(h, tol.max_step);
    }

    constexpr double safety = 0.9, min_factor = 0.333, max_factor = 6.0;
    double t = t0;
    bool last_rejected = false;
    size_t steps = 0;
    while (t < t_end) {
        if (++steps > tol.max_steps) {
            throw StepSizeUnderflow<N>(t, y, h);
        }
        bool final_step = false;
        if (t + h >= t_end) {
            h = t_end - t;
            final_step = true;
        }
        if (h <= 16.0 * std::numeric_limits<double>::epsilon() * std::abs(t)) {
            throw StepSizeUnderflow<N>(t, y, h);
        }

        for (size_t i = 0; i < N; i++) tmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, tmp, k2);
        for (size_t i = 0; i < N; i++) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, tmp, k3);
        for (size_t i = 0; i < N; i++) tmp[i] = y[i] + h * (a41 * k1[i] + a43 * k3[i]);
        rhs(t + c4 * h, tmp, k4);
        for (size_t i = 0; i < N; i++) tmp[i] = y[i] + h * (a51 * k1[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, tmp, k5);
        for (size_t i = 0; i < N; i++) tmp[i] = y[i] + h * (a61 * k1[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + c6 * h, tmp, k6);
        for (size_t i = 0; i < N; i++) tmp[i] = y[i] + h * (a71 * k1[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        rhs(t + c7 * h, tmp, k7);
        for (size_t i = 0; i < N; i++)
            tmp[i] = y[i] + h * (a81 * k1[i] + a84 * k4[i] + a85 * k5[i] + a86 * k6[i] + a87 * k7[i]);
        rhs(t + c8 * h, tmp, k8);
        for (size_t i = 0; i < N; i++)
            tmp[i] = y[i] + h * (a91 * k1[i] + a94 * k4[i] + a95 * k5[i] + a96 * k6[i] + a97 * k7[i] + a98 * k8[i]);
        rhs(t + c9 * h, tmp, k9);
        for (size_t i = 0; i < N; i++)
            tmp[i] = y[i] + h * (a101 * k1[i] + a104 * k4[i] + a105 * k5[i] + a106 * k6[i] + a107 * k7[i] +
                                 a108 * k8[i] + a109 * k9[i]);
        rhs(t + c10 * h, tmp, k10);
        for (size_t i = 0; i < N; i++)
            tmp[i] = y[i] + h * (a111 * k1[i] + a114 * k4[i] + a115 * k5[i] + a116 * k6[i] + a117 * k7[i] +
                                 a118 * k8[i] + a119 * k9[i] + a1110 * k10[i]);
        rhs(t + c11 * h, tmp, k11);
        double t_new = final_step ? t_end : t + h;
        for (size_t i = 0; i < N; i++)
            tmp[i] = y[i] + h * (a121 * k1[i] + a124 * k4[i] + a125 * k5[i] + a126 * k6[i] + a127 * k7[i] +
                                 a128 * k8[i] + a129 * k9[i] + a1210 * k10[i] + a1211 * k11[i]);
        rhs(t_new, tmp, k12);
        for (size_t i = 0; i < N; i++) {
            sum[i] = b1 * k1[i] + b6 * k6[i] + b7 * k7[i] + b8 * k8[i] + b9 * k9[i] + b10 * k10[i] + b11 * k11[i] +
                     b12 * k12[i];
            y_new[i] = y[i] + h * sum[i];
        }

        double err5 = 0.0, err3 = 0.0;
        for (size_t i = 0; i < N; i++) {
            double sc = tol.absolute + tol.relative * std::max(std::abs(y[i]), std::abs(y_new[i]));
            double e3 = (sum[i] - bhh1 * k1[i] - bhh2 * k9[i] - bhh3 * k12[i]) / sc;
            double e5 = (er1 * k1[i] + er6 * k6[i] + er7 * k7[i] + er8 * k8[i] + er9 * k9[i] + er10 * k10[i] +
                         er11 * k11[i] + er12 * k12[i]) /
                        sc;
            err3 += e3 * e3;
            err5 += e5 * e5;
        }
        double denom = err5 + 0.01 * err3;
        double err = denom > 0.0 ? std::abs(h) * err5 / std::sqrt(N * denom) : 0.0;

        if (err <= 1.0) {
            t = t_new;
            y = y_new;
            rhs(t, y, k1);
            observer(t, y);
            double factor = err == 0.0 ? max_factor : std::clamp(safety * std::pow(err, -0.125), min_factor, max_factor);
            if (last_rejected) {
                factor = std::min(factor, 1.0);
            }
            h *= factor;
            last_rejected = false;
        } else {
            h *= std::max(min_factor, safety * std::pow(err, -0.125));
            last_rejected = true;
        }
        if (tol.max_step > 0.0) {
            h = std::min(h, tol.max_step);
        }
    }
    return y;
}

}  // namespace qnd

#endif
