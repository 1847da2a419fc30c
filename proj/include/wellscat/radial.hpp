#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ode.hpp"
#include "potentials.hpp"
#include "rootfind.hpp"
#include "specfun.hpp"

namespace wellscat {

/// One partial-wave radial problem: sector (l, n), frequency k, coupling
/// lambda, and the well profile.
struct RadialProblem {
    int l;
    int n;
    double k;
    double lambda;
    RadialPotential well;
};

/// Value and radial derivative of the regular solution at radius r, plus the
/// normalization tag and the count of 2^-512 amplitude renormalizations
/// applied relative to that normalization.
struct BoundaryData {
    double r;
    double value;
    double deriv;
    const char* scale_note;
    int renorm_count;
};

/// Integration controls; defaults match the solver contract.
struct SolveOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_max = 1e308;
};

namespace radial_detail {

/// Segment endpoints for the integration: start radius, interior breakpoints,
/// and r_end, deduplicated at relative tolerance 1e-12.
inline std::vector<double> segment_bounds(const RadialPotential& well, double r0, double r_end) {
    std::vector<double> b{r0};
    for (double bp : well.breakpoints)
        if (bp > r0 && bp < r_end) b.push_back(bp);
    b.push_back(r_end);
    std::sort(b.begin(), b.end());
    std::vector<double> out;
    for (double v : b)
        if (out.empty() || v > out.back() * (1.0 + 1e-12)) out.push_back(v);
    if (out.size() < 2 || out.back() != r_end) out.push_back(r_end);
    return out;
}

/// Integrates the regular solution from the Frobenius seed at r0 to r_end,
/// splitting at profile breakpoints. Within a segment the potential argument
/// is clamped to the segment's interior (relative nudge 1e-14) so that stage
/// evaluations at segment endpoints never read across a discontinuity; the
/// centrifugal terms always use the true radius. on_step(r, {f, f'}) fires
/// after every accepted step.
template <class Cb>
BoundaryData integrate_regular(const RadialProblem& p, double r_end, const SolveOptions& opt,
                               Cb&& on_step) {
    const double nu = BesselOrder(p.l, p.n).nu;
    if (nu > 60.0)
        throw std::domain_error("regular_solution: order nu > 60 is outside the supported range");
    if (!(p.k >= 0.0)) throw std::domain_error("regular_solution requires k >= 0");
    if (!(p.lambda >= 0.0)) throw std::domain_error("regular_solution requires lambda >= 0");
    const double support = p.well.support_radius;
    if (!(support > 0.0)) throw std::domain_error("well must have positive support radius");

    if (p.lambda == 0.0) {
        // free equation: exact Bessel (k > 0) or pure power (k = 0) values
        if (p.k > 0.0) {
            const BesselJY b = bessel_jy(nu, p.k * r_end);
            return {r_end, b.j, p.k * b.jp, "free-bessel", 0};
        }
        if (nu == 0.0) return {r_end, 1.0, 0.0, "free-power", 0};
        return {r_end, std::pow(r_end, nu), nu * std::pow(r_end, nu - 1.0), "free-power", 0};
    }

    const double r0 = 1e-6 * support;
    if (!(r_end > r0))
        throw std::invalid_argument("regular_solution: r_end must exceed the start radius");

    // two-term Frobenius seed, scaled by r0^-nu: f(r) ~ (r/r0)^nu (1 + c2 r^2)
    const double c2 = -(p.k * p.k + p.lambda * p.well.profile(0.0)) / (4.0 * (nu + 1.0));
    std::array<double, 2> y;
    y[0] = 1.0 + c2 * r0 * r0;
    y[1] = nu / r0 * y[0] + 2.0 * c2 * r0;

    int renorms = 0;
    const std::vector<double> bounds = segment_bounds(p.well, r0, r_end);
    for (std::size_t s = 0; s + 1 < bounds.size(); ++s) {
        const double lo = bounds[s];
        const double hi = bounds[s + 1];
        const double wlo = lo * (1.0 + 1e-14);
        const double whi = hi * (1.0 - 1e-14);
        const auto rhs = [&](double r, const std::array<double, 2>& v) -> std::array<double, 2> {
            const double wr = std::clamp(r, wlo, whi);
            const double q = nu * nu / (r * r) - p.lambda * p.well.profile(wr) - p.k * p.k;
            return {v[1], -v[1] / r + q * v[0]};
        };
        const Dopri5Result res =
            integrate_dopri5(rhs, lo, hi, y, opt.rtol, opt.atol, on_step, opt.h_max);
        y = res.y;
        renorms += res.renorm_count;
    }
    if (y[0] == 0.0 && y[1] == 0.0)
        throw std::runtime_error("regular_solution: degenerate (0, 0) boundary data");
    return {r_end, y[0], y[1], "frobenius-power", renorms};
}

struct NodeSample {
    double r, f, fp;
};

} // namespace radial_detail

/// Regular solution of the radial equation at r_end (value, radial
/// derivative). Normalized by the Frobenius seed; only scale-invariant
/// combinations of the outputs are contractual.
inline BoundaryData regular_solution(const RadialProblem& p, double r_end,
                                     const SolveOptions& opt = {}) {
    return radial_detail::integrate_regular(p, r_end, opt, [](double, const std::array<double, 2>&) {});
}

/// Number of bound states in the (l, n) sector: interior zeros of the
/// zero-energy regular solution on (0, support], counted by sign changes over
/// accepted steps (each confirmed on the cubic Hermite interpolant), plus the
/// analytically decided tail zero beyond the support.
inline int count_bound_states(int l, int n, double lambda, const RadialPotential& well) {
    if (!(lambda >= 0.0)) throw std::domain_error("count_bound_states requires lambda >= 0");
    if (lambda == 0.0) return 0;
    const double nu = BesselOrder(l, n).nu;
    const RadialProblem p{l, n, 0.0, lambda, well};

    std::vector<radial_detail::NodeSample> samples;
    SolveOptions opt;
    // cap steps well below the minimal zero spacing ~ pi/sqrt(lambda*W(0))
    opt.h_max = std::numbers::pi / (8.0 * std::sqrt(lambda * well.profile(0.0) + 1.0));
    const double r0 = 1e-6 * well.support_radius;
    const double c2 = -lambda * well.profile(0.0) / (4.0 * (nu + 1.0));
    samples.push_back({r0, 1.0 + c2 * r0 * r0, 0.0});
    const BoundaryData end = radial_detail::integrate_regular(
        p, well.support_radius, opt,
        [&](double r, const std::array<double, 2>& y) { samples.push_back({r, y[0], y[1]}); });

    int count = 0;
    const radial_detail::NodeSample* prev = nullptr;
    for (const auto& s : samples) {
        if (s.f == 0.0) {  // exact grid hit: count it once, restart comparison
            ++count;
            prev = nullptr;
            continue;
        }
        if (prev && (prev->f > 0.0) != (s.f > 0.0)) {
            // confirm a simple crossing on the Hermite interpolant
            const auto hermite = [&](double r) {
                return cubic_hermite(prev->r, prev->f, prev->fp, s.r, s.f, s.fp, r);
            };
            brent_root(hermite, prev->r, s.r, 1e-13 * (s.r - prev->r) + 1e-300);
            ++count;
        }
        prev = &s;
    }

    // tail: beyond the support f = a r^nu + b r^-nu (nu > 0) or a + b ln r
    // (nu = 0); at most one more zero, present iff the growing-term
    // coefficient opposes the boundary value.
    const double s = end.r, f = end.value, fp = end.deriv;
    if (nu > 0.0) {
        const double a_growth = 0.5 * (f + s * fp / nu);
        if (a_growth * f < 0.0) ++count;
    } else {
        const double b_log = s * fp;
        if (b_log * f < 0.0) ++count;
    }
    return count;
}

/// Half-bound detection report: residual = |b| / (|a| + |b|) for the
/// zero-energy exterior form u(r) = a + b r (u = sqrt(r) f, n = 3, l = 0).
struct HalfBoundReport {
    bool flag;
    double residual;
};

inline constexpr double tol_halfbound = 1e-6;

/// Detects a zero-energy half-bound state in the (n=3, l=0) sector: flags
/// when the linear-growth coefficient of u = sqrt(r) f vanishes to within
/// tol_halfbound of the total amplitude.
inline HalfBoundReport detect_half_bound(double lambda, const RadialPotential& well, int n = 3) {
    if (n != 3) throw std::domain_error("detect_half_bound is implemented only for n = 3");
    if (!(lambda >= 0.0)) throw std::domain_error("detect_half_bound requires lambda >= 0");
    if (lambda == 0.0) return {false, 1.0};
    const RadialProblem p{0, 3, 0.0, lambda, well};
    const BoundaryData b = regular_solution(p, well.support_radius);
    const double rt = std::sqrt(b.r);
    const double u = rt * b.value;
    const double up = b.value / (2.0 * rt) + rt * b.deriv;
    const double a_const = u - b.r * up;
    const double denom = std::fabs(up) + std::fabs(a_const);
    if (denom == 0.0)
        throw std::runtime_error("detect_half_bound: degenerate zero solution");
    const double residual = std::fabs(up) / denom;
    return {residual < tol_halfbound, residual};
}

} // namespace wellscat
