#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace wellscat {

/// Plain bisection on [a, b] down to absolute width xtol; f(a) and f(b) must
/// have opposite signs (either may be zero). Returns the bracket midpoint.
template <class F>
double bisect_root(F&& f, double a, double b, double fa, double fb, double xtol,
                   int max_iter = 200) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("bisect_root: endpoints do not bracket a sign change");
    for (int i = 0; i < max_iter && b - a > xtol; ++i) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;  // bracket at floating-point resolution
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    return 0.5 * (a + b);
}

/// Brent's method on [a, b] with f(a)f(b) <= 0; classical inverse-quadratic /
/// secant / bisection hybrid, absolute tolerance xtol.
template <class F>
double brent_root(F&& f, double a, double b, double xtol, int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw std::invalid_argument("brent_root: endpoints do not bracket a sign change");
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int i = 0; i < max_iter; ++i) {
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * 2.220446049250313e-16 * std::fabs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0) return b;
        if (std::fabs(e) < tol || std::fabs(fa) <= std::fabs(fb)) {
            d = m; e = m;  // bisection
        } else {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;  // secant
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
                e = d; d = p / q;  // accept interpolation
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += std::fabs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a; fc = fa;
            d = b - a; e = d;
        }
    }
    return b;
}

/// Cubic Hermite interpolant value at t from values/derivatives at t0, t1.
inline double cubic_hermite(double t0, double y0, double d0, double t1, double y1, double d1,
                            double t) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * y0 + (s3 - 2.0 * s2 + s) * h * d0
           + (-2.0 * s3 + 3.0 * s2) * y1 + (s3 - s2) * h * d1;
}

} // namespace wellscat
