#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "io.hpp"
#include "parallel.hpp"
#include "radial.hpp"
#include "rootfind.hpp"

namespace wellscat {

/// Thrown when a scan target is identically zero (free potential).
struct IdenticallyZeroError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raw and scale-normalized Wronskian determinant values.
struct WronskianD {
    double raw;
    double normalized;
};

/// D_{l,k,lambda,R}(r_eval) = det[[J_nu(k r), f(r)], [d_r J_nu(k r), f'(r)]]
/// for the R-scaled well, plus the variant normalized by
/// (|J| + |d_r J|/k)(|f| + |f'|/k) for cross-parameter comparability.
inline WronskianD wronskian_d_full(int l, int n, double k, double lambda, double R,
                                   double r_eval, const SolveOptions& opt = {}) {
    if (!(k > 0.0)) throw std::domain_error("wronskian_d requires k > 0");
    if (!(lambda >= 0.0)) throw std::domain_error("wronskian_d requires lambda >= 0");
    const RadialPotential well = single_well(R);
    if (r_eval < well.support_radius * (1.0 - 1e-12))
        throw std::domain_error("wronskian_d: r_eval must lie outside the well support");
    const double nu = BesselOrder(l, n).nu;
    const RadialProblem p{l, n, k, lambda, well};
    const BoundaryData b = regular_solution(p, r_eval, opt);
    const BesselJY bes = bessel_jy(nu, k * r_eval);
    const double raw = bes.j * b.deriv - k * bes.jp * b.value;
    const double n1 = std::fabs(bes.j) + std::fabs(bes.jp);
    const double n2 = std::fabs(b.value) + std::fabs(b.deriv) / k;
    return {raw, raw / (n1 * n2)};
}

inline double wronskian_d(int l, int n, double k, double lambda, double R, double r_eval) {
    return wronskian_d_full(l, n, k, lambda, R, r_eval).raw;
}

inline double wronskian_d_normalized(int l, int n, double k, double lambda, double R,
                                     double r_eval) {
    return wronskian_d_full(l, n, k, lambda, R, r_eval).normalized;
}

/// A refined zero: root location, final bracket, and the normalized
/// determinant value re-evaluated at the root.
struct ZeroRecord {
    double root;
    double bracket_lo;
    double bracket_hi;
    double f_at_root;
};

/// Bracketed, refined zeros of the normalized determinant along one variable.
struct ZeroScan {
    char variable;  // 'k' or 'R'
    int l;
    int n;
    double lambda;
    double fixed_value;  // R for a k-scan, k for an R-scan
    double lo;
    double hi;
    double grid_step;
    std::vector<ZeroRecord> zeros;
    std::vector<double> tangencies;  // |F| minima below 1e-6 with no sign change
};

namespace transparency_detail {

inline constexpr SolveOptions scan_opt{1e-11, 1e-13, 1e308};
inline constexpr SolveOptions refine_opt{3e-13, 1e-15, 1e308};

/// Shared scan driver: brackets sign changes of F on a uniform grid, refines
/// each by bisection under tightened tolerances, and flags near-tangencies.
template <class F>
void run_scan(ZeroScan& scan, F&& eval) {
    const double span = scan.hi - scan.lo;
    const std::size_t cells = std::max<std::size_t>(
        8, static_cast<std::size_t>(std::ceil(span / scan.grid_step)));
    std::vector<double> x(cells + 1), f(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i)
        x[i] = scan.lo + span * static_cast<double>(i) / static_cast<double>(cells);
    x.front() = scan.lo;
    x.back() = scan.hi;
    parallel_for(cells + 1, [&](std::size_t i) { f[i] = eval(x[i], scan_opt); });

    const auto refine_bracket = [&](double a, double b, double fa, double fb) {
        const double wtol = std::min(1e-9 * span, 1e-12 * (1.0 + std::fabs(a)));
        const auto tight = [&](double v) { return eval(v, refine_opt); };
        const double root = bisect_root(tight, a, b, fa, fb, wtol);
        const double half = 0.5 * wtol;
        scan.zeros.push_back({root, root - half, root + half, tight(root)});
    };

    for (std::size_t i = 0; i < cells; ++i) {
        if (f[i] == 0.0) {  // exact grid hit (measure zero): record directly
            scan.zeros.push_back({x[i], x[i], x[i], 0.0});
            continue;
        }
        if (f[i + 1] != 0.0 && (f[i] > 0.0) != (f[i + 1] > 0.0)) {
            const double fa = eval(x[i], refine_opt);
            const double fb = eval(x[i + 1], refine_opt);
            if (fa == 0.0) continue;  // owned by the previous cell's endpoint
            if (fb == 0.0 || (fa > 0.0) != (fb > 0.0)) {
                refine_bracket(x[i], x[i + 1], fa, fb);
                continue;
            }
            // sign change evaporated under tight tolerances: treat as tangential
            scan.tangencies.push_back(0.5 * (x[i] + x[i + 1]));
            continue;
        }
        // near-tangency probe: interior local |F| minimum without sign change
        if (i >= 1 && f[i] != 0.0 && std::fabs(f[i]) < 1e-3
            && std::fabs(f[i]) < std::fabs(f[i - 1]) && std::fabs(f[i]) <= std::fabs(f[i + 1])
            && (f[i - 1] > 0.0) == (f[i] > 0.0) && (f[i] > 0.0) == (f[i + 1] > 0.0)) {
            const double a = x[i - 1], b = x[i + 1];
            double best = std::fabs(f[i]);
            double best_x = x[i];
            double prev_v = f[i - 1];
            double prev_x = a;
            bool bracketed = false;
            for (int j = 1; j <= 20; ++j) {
                const double xx = a + (b - a) * j / 20.0;
                const double v = eval(xx, refine_opt);
                if (v != 0.0 && prev_v != 0.0 && (v > 0.0) != (prev_v > 0.0)) {
                    refine_bracket(prev_x, xx, prev_v, v);
                    bracketed = true;
                    break;
                }
                if (std::fabs(v) < best) {
                    best = std::fabs(v);
                    best_x = xx;
                }
                prev_v = v;
                prev_x = xx;
            }
            if (!bracketed && best < 1e-6) scan.tangencies.push_back(best_x);
        }
    }
    std::sort(scan.zeros.begin(), scan.zeros.end(),
              [](const ZeroRecord& u, const ZeroRecord& v) { return u.root < v.root; });
}

} // namespace transparency_detail

/// Default scan resolution: zeros sit ~ pi/k apart in k R, so step well below
/// that scale.
inline double default_scan_step(double R) {
    return std::min(0.01, std::numbers::pi / (40.0 * R));
}

/// Zeros of F(k) = D_{l,k,lambda,R}(R) over [k_lo, k_hi].
inline ZeroScan scan_zeros_in_k(int l, int n, double lambda, double R, double k_lo, double k_hi,
                                double grid_step = 0.0) {
    if (lambda == 0.0)
        throw IdenticallyZeroError("scan_zeros_in_k: the free determinant is identically zero");
    if (!(k_lo > 0.0) || !(k_hi > k_lo))
        throw std::invalid_argument("scan_zeros_in_k requires 0 < k_lo < k_hi");
    ZeroScan scan{'k', l, n, lambda, R, k_lo, k_hi,
                  grid_step > 0.0 ? grid_step : default_scan_step(R),
                  {}, {}};
    transparency_detail::run_scan(scan, [&](double k, const SolveOptions& opt) {
        return wronskian_d_full(l, n, k, lambda, R, R, opt).normalized;
    });
    return scan;
}

/// Zeros of G(R) = D_{l,k,lambda,R}(R) over [R_lo, R_hi].
inline ZeroScan scan_zeros_in_R(int l, int n, double lambda, double k, double R_lo, double R_hi,
                                double grid_step = 0.0) {
    if (lambda == 0.0)
        throw IdenticallyZeroError("scan_zeros_in_R: the free determinant is identically zero");
    if (!(R_lo > 0.0) || !(R_hi > R_lo))
        throw std::invalid_argument("scan_zeros_in_R requires 0 < R_lo < R_hi");
    ZeroScan scan{'R', l, n, lambda, k, R_lo, R_hi,
                  grid_step > 0.0 ? grid_step : default_scan_step(k),
                  {}, {}};
    transparency_detail::run_scan(scan, [&](double R, const SolveOptions& opt) {
        return wronskian_d_full(l, n, k, lambda, R, R, opt).normalized;
    });
    return scan;
}

/// Numerical evidence that the double well is completely non-transparent at
/// the scanned truncation: unit-well zeros and the margin of the R-well
/// determinant over them.
struct TransparencyCertificate {
    DoubleWellConfig config;
    int n;
    int l_max;
    int lt_max;
    double k_lo;
    double k_hi;
    double grid_step;
    double margin_threshold;
    std::vector<std::pair<int, std::vector<double>>> unit_well_zeros;  // (l~, roots)
    double margin;  // +inf when no unit-well zeros exist
    bool pass;
    int witness_lt;
    double witness_k;
    int witness_l;
    bool boundary_violation;
    bool tangency_found;
    double nu_star_unit;
    double nu_star_scaled;
    bool truncation_covers;
    std::vector<std::string> diagnostics;
};

/// Evaluates the joint-zero margin for the double well: scans the unit well
/// for determinant zeros (all l~ <= lt_max), then takes the minimum of the
/// normalized R-well |D| over those frequencies and all l <= l_max. Verdict
/// passes iff the margin clears the threshold, no tangency was flagged, and
/// every zero is isolated from the interval boundary by more than one grid
/// step. The heuristic angular cutoff nu* is recorded, not asserted.
inline TransparencyCertificate certify_non_transparency(const DoubleWellConfig& config,
                                                        int l_max, int lt_max, double k_lo,
                                                        double k_hi,
                                                        double margin_threshold = 1e-4,
                                                        int n = 3, double grid_step = 0.0) {
    if (l_max < 0 || lt_max < 0)
        throw std::invalid_argument("certify_non_transparency requires l_max, lt_max >= 0");
    if (!(margin_threshold > 0.0))
        throw std::invalid_argument("certify_non_transparency requires margin_threshold > 0");
    const double step = grid_step > 0.0 ? grid_step : default_scan_step(1.0);
    TransparencyCertificate cert{config, n, l_max, lt_max, k_lo, k_hi, step, margin_threshold,
                                 {}, std::numeric_limits<double>::infinity(), false,
                                 -1, 0.0, -1, false, false, 0.0, 0.0, false, {}};
    for (int lt = 0; lt <= lt_max; ++lt) {
        ZeroScan scan = scan_zeros_in_k(lt, n, config.lambda, 1.0, k_lo, k_hi, step);
        std::vector<double> roots;
        for (const ZeroRecord& z : scan.zeros) {
            roots.push_back(z.root);
            if (z.root - k_lo <= step || k_hi - z.root <= step) {
                cert.boundary_violation = true;
                cert.diagnostics.push_back("unit-well zero at k=" + fmt_double(z.root)
                                           + " (l~=" + std::to_string(lt)
                                           + ") within one grid step of the interval boundary");
            }
        }
        if (!scan.tangencies.empty()) {
            cert.tangency_found = true;
            for (double t : scan.tangencies)
                cert.diagnostics.push_back("tangential near-zero at k=" + fmt_double(t)
                                           + " (l~=" + std::to_string(lt) + ")");
        }
        cert.unit_well_zeros.emplace_back(lt, std::move(roots));
    }

    // flatten (l~ asc, root asc, l asc) and evaluate margins in index order
    struct Probe {
        int lt;
        double k;
        int l;
    };
    std::vector<Probe> probes;
    for (const auto& [lt, roots] : cert.unit_well_zeros)
        for (double k : roots)
            for (int l = 0; l <= l_max; ++l) probes.push_back({lt, k, l});
    std::vector<double> vals(probes.size());
    parallel_for(probes.size(), [&](std::size_t i) {
        vals[i] = std::fabs(wronskian_d_full(probes[i].l, n, probes[i].k, config.lambda,
                                             config.R, config.R,
                                             transparency_detail::refine_opt)
                                .normalized);
    });
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (vals[i] < cert.margin) {
            cert.margin = vals[i];
            cert.witness_lt = probes[i].lt;
            cert.witness_k = probes[i].k;
            cert.witness_l = probes[i].l;
        }
    }

    const double half_shift = 0.5 * (n - 2);
    cert.nu_star_unit = 0.5 * std::sqrt(k_hi * k_hi + config.lambda);
    cert.nu_star_scaled = 0.5 * std::sqrt(k_hi * k_hi * config.R * config.R + config.lambda);
    cert.truncation_covers = (lt_max + half_shift >= cert.nu_star_unit)
                             && (l_max + half_shift >= cert.nu_star_scaled);
    cert.pass = !cert.boundary_violation && !cert.tangency_found
                && cert.margin > cert.margin_threshold;
    return cert;
}

/// Grid search for a second-well radius maximizing the certificate margin
/// jointly over a list of couplings.
struct SuggestedR {
    double R_best;
    double margin;  // joint margin at R_best
    bool scans_clean;  // no tangency / boundary-proximate unit zeros for any lambda
    std::vector<std::pair<double, double>> samples;  // (R, joint margin)
};

inline SuggestedR suggest_r(const std::vector<double>& lambda_list, double x0_norm,
                            double R_lo, double R_hi, int l_max, int lt_max, double k_lo,
                            double k_hi, int grid_points = 161, double grid_step = 0.0,
                            int n = 3) {
    if (lambda_list.empty())
        throw std::invalid_argument("suggest_r requires a nonempty lambda list");
    for (double lam : lambda_list)
        if (!(lam > 0.0)) throw std::invalid_argument("suggest_r requires positive lambdas");
    if (!(R_lo > 0.0) || !(R_hi > R_lo) || !(R_hi < x0_norm - 1.0))
        throw std::invalid_argument("suggest_r requires 0 < R_lo < R_hi < x0_norm - 1");
    if (grid_points < 2) throw std::invalid_argument("suggest_r requires >= 2 grid points");
    const double step = grid_step > 0.0 ? grid_step : default_scan_step(1.0);

    // unit-well zeros are R-independent: scan once per coupling
    struct Probe {
        double lambda;
        double k;
        int l;
    };
    std::vector<Probe> probes;
    bool scans_clean = true;
    for (double lam : lambda_list) {
        for (int lt = 0; lt <= lt_max; ++lt) {
            ZeroScan scan = scan_zeros_in_k(lt, n, lam, 1.0, k_lo, k_hi, step);
            if (!scan.tangencies.empty()) scans_clean = false;
            for (const ZeroRecord& z : scan.zeros) {
                if (z.root - k_lo <= step || k_hi - z.root <= step) scans_clean = false;
                for (int l = 0; l <= l_max; ++l) probes.push_back({lam, z.root, l});
            }
        }
    }

    std::vector<double> grid(grid_points);
    for (int i = 0; i < grid_points; ++i)
        grid[i] = R_lo + (R_hi - R_lo) * static_cast<double>(i) / (grid_points - 1);
    grid.front() = R_lo;
    grid.back() = R_hi;

    const auto joint_margin = [&](double R) {
        double m = std::numeric_limits<double>::infinity();
        for (const Probe& pr : probes) {
            const double v = std::fabs(
                wronskian_d_full(pr.l, n, pr.k, pr.lambda, R, R, SolveOptions{}).normalized);
            if (v < m) m = v;
        }
        return m;
    };

    SuggestedR out{grid.front(), -1.0, scans_clean, {}};
    std::vector<double> margins(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { margins[i] = joint_margin(grid[i]); });
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.samples.emplace_back(grid[i], margins[i]);
        if (margins[i] > margins[best]) best = i;
    }
    out.R_best = grid[best];
    out.margin = margins[best];
    return out;
}

} // namespace wellscat
