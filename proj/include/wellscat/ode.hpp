#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace wellscat {

/// Outcome of one integration: final state, number of power-of-two
/// renormalizations applied (each scales the state by 2^-512), step count.
struct Dopri5Result {
    std::array<double, 2> y;
    int renorm_count = 0;
    std::size_t n_steps = 0;
};

/// Dormand-Prince 5(4) with FSAL and PI-free step control for a two-component
/// first-order system y' = rhs(t, y). on_step(t, y) fires after every accepted
/// step. When renormalize is set, the state (and the FSAL stage) is scaled by
/// 2^-512 whenever |y0|+|y1| > 1e150 — exact only for rhs linear in y, which
/// is all this library integrates.
template <class Rhs, class StepCb>
Dopri5Result integrate_dopri5(Rhs&& rhs, double t0, double t1, std::array<double, 2> y,
                              double rtol, double atol, StepCb&& on_step,
                              double h_max = 1e308, bool renormalize = true) {
    using V = std::array<double, 2>;
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    if (!(t1 > t0)) throw std::invalid_argument("integrate_dopri5 requires t1 > t0");
    Dopri5Result res;
    double t = t0;
    double h = std::min({h_max, (t1 - t0), 1e-2 * (t1 - t0) + 1e-12 * t0});
    V k1 = rhs(t, y);
    constexpr std::size_t max_steps = 10'000'000;
    while (t < t1) {
        if (t + h > t1) h = t1 - t;
        if (!(h > 1e-14 * std::max(std::fabs(t), 1.0)))
            throw std::runtime_error("integrate_dopri5: step size underflow");
        V y2, y3, y4, y5, y6, yn;
        for (int i = 0; i < 2; ++i) y2[i] = y[i] + h * a21 * k1[i];
        const V k2 = rhs(t + c2 * h, y2);
        for (int i = 0; i < 2; ++i) y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const V k3 = rhs(t + c3 * h, y3);
        for (int i = 0; i < 2; ++i) y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const V k4 = rhs(t + c4 * h, y4);
        for (int i = 0; i < 2; ++i)
            y5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const V k5 = rhs(t + c5 * h, y5);
        for (int i = 0; i < 2; ++i)
            y6[i] = y[i]
                    + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        const V k6 = rhs(t + h, y6);
        for (int i = 0; i < 2; ++i)
            yn[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const V k7 = rhs(t + h, yn);
        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double ei = h
                              * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i]
                                 + e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(yn[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(0.5 * err);
        if (!(err < 1e300)) {
            h *= 0.2;  // NaN/overflow in stages: shrink hard and retry
            continue;
        }
        if (err <= 1.0) {
            t += h;
            y = yn;
            k1 = k7;
            ++res.n_steps;
            if (renormalize && std::fabs(y[0]) + std::fabs(y[1]) > 1e150) {
                y[0] *= 0x1p-512;
                y[1] *= 0x1p-512;
                k1[0] *= 0x1p-512;
                k1[1] *= 0x1p-512;
                ++res.renorm_count;
            }
            on_step(t, y);
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(err, 1e-300), -0.2), 0.2, 5.0);
        h = std::min(h * factor, h_max);
        if (res.n_steps >= max_steps)
            throw std::runtime_error("integrate_dopri5: step budget exhausted");
    }
    res.y = y;
    return res;
}

} // namespace wellscat
