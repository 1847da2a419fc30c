#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "parallel.hpp"

namespace wellscat {

/// Truncated rank-one perturbation T_k = diag(t) + k <z,.> z on the first N
/// coordinates, with t_j = 1/(8 j^3) and z_j = 1/(2 j) (j = 1..N, stored
/// descending in t).
struct ModelOperator {
    int N;
    double k;
    std::vector<double> z0;  // coupling vector, strictly decreasing positives
    std::vector<double> t;   // diagonal entries t_j = z0_j^3, strictly descending
    std::vector<double> w;   // squared coupling weights z0_j^2
    double z_norm_sq;

    ModelOperator(int N_, double k_) : N(N_), k(k_), z_norm_sq(0.0) {
        if (N < 2) throw std::invalid_argument("ModelOperator requires N >= 2");
        if (!std::isfinite(k)) throw std::invalid_argument("ModelOperator requires finite k");
        z0.resize(static_cast<std::size_t>(N));
        t.resize(static_cast<std::size_t>(N));
        w.resize(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) {
            const double jj = static_cast<double>(j + 1);
            const double z = 1.0 / (2.0 * jj);
            z0[static_cast<std::size_t>(j)] = z;
            t[static_cast<std::size_t>(j)] = 1.0 / (8.0 * jj * jj * jj);
            w[static_cast<std::size_t>(j)] = z * z;
        }
        for (int j = 0; j < N; ++j) z_norm_sq += w[static_cast<std::size_t>(j)];
    }
};

/// One eigenvalue stored as its nearest diagonal pole plus an exact offset,
/// so near-pole roots and adjacent gaps stay resolvable far below 1 ulp of mu.
struct SecularRoot {
    int anchor;       // index of the anchoring pole
    double t_anchor;  // t[anchor]
    double d;         // mu - t[anchor]

    double mu() const { return t_anchor + d; }
};

namespace model_detail {

/// Secular value f(mu) = 1 + k sum w_i/(t_i - mu) and derivative at
/// mu = t[anchor] + d, accumulated in fixed index order (deterministic) with
/// four chains so the divisions pipeline.
inline std::pair<double, double> secular_fd(const ModelOperator& m, int anchor, double d) {
    const double* t = m.t.data();
    const double* w = m.w.data();
    const double ta = t[anchor];
    const std::size_t n = m.t.size();
    double f0 = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;
    double g0 = 0.0, g1 = 0.0, g2 = 0.0, g3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const double r0 = 1.0 / ((t[i] - ta) - d);
        const double r1 = 1.0 / ((t[i + 1] - ta) - d);
        const double r2 = 1.0 / ((t[i + 2] - ta) - d);
        const double r3 = 1.0 / ((t[i + 3] - ta) - d);
        f0 += w[i] * r0;
        f1 += w[i + 1] * r1;
        f2 += w[i + 2] * r2;
        f3 += w[i + 3] * r3;
        g0 += w[i] * r0 * r0;
        g1 += w[i + 1] * r1 * r1;
        g2 += w[i + 2] * r2 * r2;
        g3 += w[i + 3] * r3 * r3;
    }
    for (; i < n; ++i) {
        const double r = 1.0 / ((t[i] - ta) - d);
        f0 += w[i] * r;
        g0 += w[i] * r * r;
    }
    return {1.0 + m.k * ((f0 + f1) + (f2 + f3)), m.k * ((g0 + g1) + (g2 + g3))};
}

/// Safeguarded Newton in the pole offset. The bracket (d_lo, d_hi) excludes
/// 0 from its interior, f changes sign across it, and the sign at the low end
/// is analytic: positive exactly when k < 0 (for every root type).
inline double solve_secular_offset(const ModelOperator& m, int anchor, double d_lo,
                                   double d_hi) {
    const bool pos_at_lo = m.k < 0.0;
    double lo = d_lo, hi = d_hi;
    double d = 0.5 * (lo + hi);
    for (int it = 0; it < 160; ++it) {
        const auto [f, fp] = secular_fd(m, anchor, d);
        if (f == 0.0) return d;
        if ((f > 0.0) == pos_at_lo) lo = d;
        else hi = d;
        double dn = d - f / fp;
        if (!(dn > lo && dn < hi)) dn = 0.5 * (lo + hi);
        if (dn == d) return d;
        const double step = std::fabs(dn - d);
        d = dn;
        if (step <= 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(d)) return d;
    }
    return d;
}

/// The root below t[N-1] that exists for k < 0; bracketed by mu = k, where
/// f(k) >= 1 - |z|^2 > 0.
inline SecularRoot bottom_root(const ModelOperator& m) {
    const int a = m.N - 1;
    const double ta = m.t[static_cast<std::size_t>(a)];
    return {a, ta, solve_secular_offset(m, a, m.k - ta, 0.0)};
}

} // namespace model_detail

/// All N eigenvalues of T_k in descending order. For k > 0 one root sits in
/// each pole gap plus one above t[0]; for k < 0 one per gap plus one below
/// t[N-1] (bounded below by k); k = 0 returns the diagonal exactly.
inline std::vector<SecularRoot> secular_roots(const ModelOperator& m) {
    using model_detail::secular_fd;
    using model_detail::solve_secular_offset;
    const int N = m.N;
    std::vector<SecularRoot> roots;
    roots.reserve(static_cast<std::size_t>(N));
    if (m.k == 0.0) {
        for (int j = 0; j < N; ++j) roots.push_back({j, m.t[static_cast<std::size_t>(j)], 0.0});
        return roots;
    }
    if (m.k > 0.0)
        roots.push_back({0, m.t[0], solve_secular_offset(m, 0, 0.0, 1.5 * m.k * m.z_norm_sq)});
    for (int j = 0; j + 1 < N; ++j) {
        const double tj = m.t[static_cast<std::size_t>(j)];
        const double tj1 = m.t[static_cast<std::size_t>(j) + 1];
        const double gap = tj - tj1;
        const double dm = -0.5 * gap;  // gap midpoint as offset from t[j]
        const auto [fm, fpm] = secular_fd(m, j, dm);
        (void)fpm;
        if (fm == 0.0) {
            roots.push_back({j, tj, dm});
        } else if ((m.k > 0.0) == (fm > 0.0)) {  // root in the lower half-gap
            roots.push_back({j + 1, tj1, solve_secular_offset(m, j + 1, 0.0, 0.5 * gap)});
        } else {  // root in the upper half-gap
            roots.push_back({j, tj, solve_secular_offset(m, j, dm, 0.0)});
        }
    }
    if (m.k < 0.0) roots.push_back(model_detail::bottom_root(m));
    return roots;
}

/// Eigenvalues of the order-N truncation at coupling k, sorted ascending.
inline std::vector<double> eigenvalues_tk(int N, double k) {
    const std::vector<SecularRoot> roots = secular_roots(ModelOperator(N, k));
    std::vector<double> mu(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) mu[roots.size() - 1 - i] = roots[i].mu();
    return mu;
}

/// Solves the full root set for every coupling in a grid (index-deterministic
/// under any worker count); the shared core behind the flow and the checks.
inline std::vector<std::vector<SecularRoot>> secular_roots_grid(
    int N, const std::vector<double>& k_grid) {
    std::vector<std::vector<SecularRoot>> out(k_grid.size());
    parallel_for(k_grid.size(), [&](std::size_t i) {
        out[i] = secular_roots(ModelOperator(N, k_grid[i]));
    });
    return out;
}

/// Per-sample spectral checks: (i) positivity of the spectrum for k >= 0,
/// (ii) exactly one eigenvalue in (k, 0) for k < 0, (iii) simplicity: every
/// root clears its pole and every adjacent gap is positive, both measured in
/// offset arithmetic. Offset clearance is skipped at k = 0 (exact diagonal).
struct ModelProperties {
    int N;
    bool positivity_ok;
    bool negative_count_ok;
    bool simplicity_ok;
    bool pass;
    double min_eigenvalue_nonneg_k;  // +inf when no sample has k >= 0
    double min_gap;                  // smallest adjacent gap over all samples
    double min_abs_offset;           // smallest |d| over samples with k != 0
    double min_abs_eigenvalue;       // spectrum distance to 0 over k != 0 samples
    std::vector<double> failing_k;
};

inline ModelProperties verify_properties(int N, const std::vector<double>& k_samples,
                                         const std::vector<std::vector<SecularRoot>>& roots) {
    if (roots.size() != k_samples.size())
        throw std::invalid_argument("verify_properties: grid/root size mismatch");
    constexpr double inf = std::numeric_limits<double>::infinity();
    ModelProperties rep{N, true, true, true, true, inf, inf, inf, inf, {}};
    for (std::size_t s = 0; s < k_samples.size(); ++s) {
        const double k = k_samples[s];
        const std::vector<SecularRoot>& rr = roots[s];
        bool ok = true;
        for (std::size_t i = 0; i + 1 < rr.size(); ++i) {
            const double gap = (rr[i].t_anchor - rr[i + 1].t_anchor) + (rr[i].d - rr[i + 1].d);
            if (gap < rep.min_gap) rep.min_gap = gap;
            if (!(gap > 0.0)) {
                rep.simplicity_ok = false;
                ok = false;
            }
        }
        if (k != 0.0) {
            for (const SecularRoot& r : rr) {
                const double ad = std::fabs(r.d);
                if (ad < rep.min_abs_offset) rep.min_abs_offset = ad;
                if (!(ad > 0.0)) {
                    rep.simplicity_ok = false;
                    ok = false;
                }
                const double am = std::fabs(r.mu());
                if (am < rep.min_abs_eigenvalue) rep.min_abs_eigenvalue = am;
            }
        }
        if (k >= 0.0) {
            const double mn = rr.back().mu();
            if (mn < rep.min_eigenvalue_nonneg_k) rep.min_eigenvalue_nonneg_k = mn;
            if (!(mn > 0.0)) {
                rep.positivity_ok = false;
                ok = false;
            }
        } else {
            int in_window = 0;
            for (const SecularRoot& r : rr) {
                const double mu = r.mu();
                if (mu < 0.0 && mu > k) ++in_window;
            }
            if (in_window != 1) {
                rep.negative_count_ok = false;
                ok = false;
            }
        }
        if (!ok) rep.failing_k.push_back(k);
    }
    rep.pass = rep.positivity_ok && rep.negative_count_ok && rep.simplicity_ok;
    return rep;
}

inline ModelProperties verify_properties(int N, const std::vector<double>& k_samples) {
    return verify_properties(N, k_samples, secular_roots_grid(N, k_samples));
}

/// The unique negative eigenvalue alpha(k) tracked over an ascending grid of
/// strictly negative couplings, with its defining bounds k < alpha(k) < 0 and
/// monotone rise toward 0.
struct NegativeBranch {
    int N;
    std::vector<double> k;
    std::vector<double> alpha;
    bool bounds_ok;
    bool monotone_ok;
};

inline NegativeBranch negative_branch(int N, const std::vector<double>& k_grid) {
    if (k_grid.empty()) throw std::invalid_argument("negative_branch: empty grid");
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        if (!(k_grid[i] < 0.0))
            throw std::invalid_argument("negative_branch requires strictly negative couplings");
        if (i > 0 && !(k_grid[i] > k_grid[i - 1]))
            throw std::invalid_argument("negative_branch requires an ascending grid");
    }
    NegativeBranch br{N, k_grid, std::vector<double>(k_grid.size()), true, true};
    parallel_for(k_grid.size(), [&](std::size_t i) {
        br.alpha[i] = model_detail::bottom_root(ModelOperator(N, k_grid[i])).mu();
    });
    for (std::size_t i = 0; i < br.alpha.size(); ++i) {
        if (!(k_grid[i] < br.alpha[i] && br.alpha[i] < 0.0)) br.bounds_ok = false;
        if (i > 0 && !(br.alpha[i] > br.alpha[i - 1])) br.monotone_ok = false;
    }
    return br;
}

/// Eigenvalue trajectories over a coupling grid: per-sample ascending spectra,
/// the two-point slope of the top eigenvalue across the largest whole decade
/// [k_max/10, k_max] of positive coupling, and the smallest gap seen.
struct SpectrumFlow {
    int N;
    std::vector<double> k;
    std::vector<std::vector<double>> eigenvalues;  // ascending per sample
    double top_slope;   // NaN when the grid has no positive coupling
    double slope_k_lo;
    double slope_k_hi;
    double min_gap;
};

inline SpectrumFlow spectrum_flow(int N, const std::vector<double>& k_grid,
                                  const std::vector<std::vector<SecularRoot>>& roots) {
    if (roots.size() != k_grid.size())
        throw std::invalid_argument("spectrum_flow: grid/root size mismatch");
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    SpectrumFlow flow{N, k_grid, {}, nan, nan, nan,
                      std::numeric_limits<double>::infinity()};
    flow.eigenvalues.resize(k_grid.size());
    for (std::size_t s = 0; s < k_grid.size(); ++s) {
        const std::vector<SecularRoot>& rr = roots[s];
        std::vector<double>& ev = flow.eigenvalues[s];
        ev.resize(rr.size());
        for (std::size_t i = 0; i < rr.size(); ++i) ev[rr.size() - 1 - i] = rr[i].mu();
        for (std::size_t i = 0; i + 1 < rr.size(); ++i) {
            const double gap = (rr[i].t_anchor - rr[i + 1].t_anchor) + (rr[i].d - rr[i + 1].d);
            if (gap < flow.min_gap) flow.min_gap = gap;
        }
    }
    double k_max = 0.0;
    for (double k : k_grid) k_max = std::max(k_max, k);
    if (k_max > 0.0) {
        flow.slope_k_hi = k_max;
        flow.slope_k_lo = 0.1 * k_max;
        const auto top_mu = [N](double k) {
            const ModelOperator m(N, k);
            return SecularRoot{0, m.t[0],
                               model_detail::solve_secular_offset(m, 0, 0.0,
                                                                  1.5 * k * m.z_norm_sq)}
                .mu();
        };
        flow.top_slope = (top_mu(flow.slope_k_hi) - top_mu(flow.slope_k_lo))
                         / (flow.slope_k_hi - flow.slope_k_lo);
    }
    return flow;
}

inline SpectrumFlow spectrum_flow(int N, const std::vector<double>& k_grid) {
    return spectrum_flow(N, k_grid, secular_roots_grid(N, k_grid));
}

} // namespace wellscat
