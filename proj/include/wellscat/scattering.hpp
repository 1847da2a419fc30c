#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "radial.hpp"

namespace wellscat {

/// One point of a continuous phase branch: frequency, unwrapped phase, and
/// the S-matrix sector eigenvalue exp(2 i delta).
struct PhasePoint {
    double k;
    double delta;
    std::complex<double> s_eigenvalue;
};

/// A continuous branch delta_l(k) on a descending k-grid, anchored to
/// delta ~ 0 at the largest frequency; adjacent points differ by < pi/2.
struct PhaseCurve {
    int l;
    int n;
    double lambda;
    std::vector<PhasePoint> points;  // descending in k from k_max_used
    bool branch_anchored_at_infinity;
    double k_max_used;
};

/// Phase shift mod pi in (-pi/2, pi/2], matching the regular solution against
/// free Bessel data at r_m (defaults to the support radius):
/// tan(delta) = W[f, J_nu(k .)](r_m) / W[f, Y_nu(k .)](r_m).
inline double phase_shift_mod_pi(const RadialProblem& p, double r_m = 0.0,
                                 const SolveOptions& opt = {}) {
    if (!(p.k > 0.0)) throw std::domain_error("phase_shift_mod_pi requires k > 0");
    const double rm = r_m > 0.0 ? r_m : p.well.support_radius;
    if (rm < p.well.support_radius * (1.0 - 1e-12))
        throw std::domain_error("phase_shift_mod_pi: matching radius inside the well support");
    const double nu = BesselOrder(p.l, p.n).nu;
    const BoundaryData b = regular_solution(p, rm, opt);
    const BesselJY bes = bessel_jy(nu, p.k * rm);
    const double wj = b.value * (p.k * bes.jp) - b.deriv * bes.j;
    const double wy = b.value * (p.k * bes.yp) - b.deriv * bes.y;
    if (wj == 0.0 && wy == 0.0)
        throw std::runtime_error("phase_shift_mod_pi: both matching Wronskians vanish");
    double delta = std::atan2(wj, wy);
    if (delta > 0.5 * std::numbers::pi) delta -= std::numbers::pi;
    else if (delta <= -0.5 * std::numbers::pi) delta += std::numbers::pi;
    return delta;
}

/// Descending geometric k-grid from k_hi to k_lo with ratio <= 1.02 and both
/// endpoints hit exactly.
inline std::vector<double> make_k_grid(double k_hi, double k_lo) {
    if (!(k_lo > 0.0) || !(k_hi > k_lo))
        throw std::invalid_argument("make_k_grid requires 0 < k_lo < k_hi");
    const int m =
        std::max(1, static_cast<int>(std::ceil(std::log(k_hi / k_lo) / std::log(1.02))));
    std::vector<double> g(m + 1);
    for (int i = 0; i <= m; ++i)
        g[i] = k_hi * std::pow(k_lo / k_hi, static_cast<double>(i) / m);
    g.front() = k_hi;
    g.back() = k_lo;
    return g;
}

namespace scattering_detail {

inline std::complex<double> unit_phase(double delta) {
    return {std::cos(2.0 * delta), std::sin(2.0 * delta)};
}

/// Unwraps the branch from (k_a, delta_a) to k_b < k_a, bisecting the
/// interval (max depth 20) until adjacent phases differ by <= pi/4; appends
/// every evaluated point and returns the branch value at k_b.
inline double unwrap_segment(const RadialProblem& base, double k_a, double delta_a, double k_b,
                             int depth, std::vector<PhasePoint>& out) {
    RadialProblem p = base;
    p.k = k_b;
    const double principal = phase_shift_mod_pi(p);
    const double delta_b =
        principal + std::numbers::pi * std::round((delta_a - principal) / std::numbers::pi);
    const double jump = std::fabs(delta_b - delta_a);
    if (jump <= 0.25 * std::numbers::pi) {
        out.push_back({k_b, delta_b, unit_phase(delta_b)});
        return delta_b;
    }
    if (depth >= 20) {
        if (jump < 0.5 * std::numbers::pi) {
            out.push_back({k_b, delta_b, unit_phase(delta_b)});
            return delta_b;
        }
        throw std::runtime_error("phase_curve: branch refinement exhausted on ["
                                 + std::to_string(k_b) + ", " + std::to_string(k_a) + "]");
    }
    const double mid = 0.5 * (k_a + k_b);
    const double delta_mid = unwrap_segment(base, k_a, delta_a, mid, depth + 1, out);
    return unwrap_segment(base, mid, delta_mid, k_b, depth + 1, out);
}

} // namespace scattering_detail

/// Continuous phase branch from K_max down to k_min, anchored at delta ~ 0 at
/// the top; K_max auto-extends (factor 1.5, capped by the special-function
/// argument range) until the principal phase there is below 0.05.
inline PhaseCurve phase_curve(int l, int n, double lambda, const RadialPotential& well,
                              double K_max, double k_min) {
    if (!(k_min > 0.0) || !(K_max > k_min))
        throw std::invalid_argument("phase_curve requires 0 < k_min < K_max");
    PhaseCurve curve{l, n, lambda, {}, true, K_max};
    if (lambda == 0.0) {
        for (double k : make_k_grid(K_max, k_min))
            curve.points.push_back({k, 0.0, {1.0, 0.0}});
        return curve;
    }
    const double k_cap = 990.0 / well.support_radius;
    if (K_max > k_cap)
        throw std::invalid_argument("phase_curve: K_max beyond the special-function range");
    const RadialProblem base{l, n, 0.0, lambda, well};
    double k_top = K_max;
    RadialProblem p = base;
    p.k = k_top;
    double anchor = phase_shift_mod_pi(p);
    while (std::fabs(anchor) >= 0.05 && k_top < k_cap) {
        k_top = std::min(1.5 * k_top, k_cap);
        p.k = k_top;
        anchor = phase_shift_mod_pi(p);
    }
    if (std::fabs(anchor) >= 0.1)
        throw std::runtime_error("phase_curve: could not anchor the branch at large k");
    curve.k_max_used = k_top;
    curve.points.push_back({k_top, anchor, scattering_detail::unit_phase(anchor)});
    double delta_prev = anchor;
    double k_prev = k_top;
    for (double k : make_k_grid(k_top, k_min)) {
        if (k >= k_prev) continue;  // skip the grid head (already anchored)
        delta_prev = scattering_detail::unwrap_segment(base, k_prev, delta_prev, k, 0, curve.points);
        k_prev = k;
    }
    return curve;
}

/// (delta(k_min) - delta(K_max)) / pi: the discrete winding of exp(2 i delta)
/// as k runs from the top of the curve down to k_min.
inline double winding_number(const PhaseCurve& curve) {
    if (curve.points.size() < 2)
        throw std::invalid_argument("winding_number requires a curve with >= 2 points");
    return (curve.points.back().delta - curve.points.front().delta) / std::numbers::pi;
}

/// Levinson comparison: winding vs bound-state count (+ 1/2 for a half-bound
/// state in the n=3, l=0 sector).
struct LevinsonReport {
    double winding;
    int n_bound;
    bool half_bound;
    double residual;
    bool pass;
};

inline LevinsonReport levinson_check(int l, int n, double lambda, const RadialPotential& well,
                                     double k_min = 1e-3, double K_max = 30.0) {
    const PhaseCurve c = phase_curve(l, n, lambda, well, K_max, k_min);
    const double w = winding_number(c);
    const int nb = count_bound_states(l, n, lambda, well);
    bool hb = false;
    if (n == 3 && l == 0) hb = detect_half_bound(lambda, well).flag;
    const double residual = std::fabs(w - (nb + (hb ? 0.5 : 0.0)));
    return {w, nb, hb, residual, residual < 0.05};
}

/// A frequency where the continuous branch crosses a multiple of pi (sector
/// S-matrix eigenvalue 1). direction = +1 when delta increases as k
/// decreases through k0.
struct TransparentCrossing {
    double k0;
    int m;
    int direction;
    double delta_at_k0;
};

/// All pi-crossings of the continuous branch interior to (k_lo, k_hi), each
/// refined by bisection on the principal phase.
inline std::vector<TransparentCrossing> almost_transparent_frequencies(
    int l, int n, double lambda, const RadialPotential& well, double k_lo, double k_hi) {
    if (lambda == 0.0) return {};
    const PhaseCurve curve = phase_curve(l, n, lambda, well, k_hi, k_lo);
    const RadialProblem base{l, n, 0.0, lambda, well};
    const double pi = std::numbers::pi;
    std::vector<TransparentCrossing> out;
    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const PhasePoint& a = curve.points[i];      // larger k
        const PhasePoint& b = curve.points[i + 1];  // smaller k
        const double lo = std::min(a.delta, b.delta);
        const double hi = std::max(a.delta, b.delta);
        const int m_lo = static_cast<int>(std::ceil(lo / pi - 1e-12));
        const int m_hi = static_cast<int>(std::floor(hi / pi + 1e-12));
        for (int m = m_lo; m <= m_hi; ++m) {
            const double pa = a.delta - m * pi;
            const double pb = b.delta - m * pi;
            if (pa == 0.0) continue;  // exact hit owned by the previous interval
            if (pb != 0.0 && (pa > 0.0) == (pb > 0.0)) continue;
            const auto principal = [&](double k) {
                RadialProblem p = base;
                p.k = k;
                return phase_shift_mod_pi(p);
            };
            const double k0 = pb == 0.0
                                  ? b.k
                                  : bisect_root(principal, b.k, a.k, pb, pa,
                                                1e-12 * (1.0 + b.k));
            if (!(k0 > k_lo && k0 < k_hi)) continue;
            const double residual = principal(k0);
            const int direction = b.delta > a.delta ? 1 : -1;
            out.push_back({k0, m, direction, m * pi + residual});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const TransparentCrossing& x, const TransparentCrossing& y) { return x.k0 < y.k0; });
    return out;
}

} // namespace wellscat
