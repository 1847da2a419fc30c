#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "io.hpp"

namespace wellscat {

namespace potentials_detail {

/// h(t) = exp(-1/t) for t > 0, else 0 (the classical smooth cutoff kernel).
inline double cutoff_h(double t) {
    return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
}

} // namespace potentials_detail

/// Smooth bump: 1 on [0, 1/4], 0 on [1/2, inf), and the symmetric blend
/// s(t) = h(t)/(h(t) + h(1-t)) with t = (1/2 - r)/(1/4) in between, so that
/// chi(0.375) = 1/2 exactly.
inline double bump_chi(double r) {
    if (!(r >= 0.0)) throw std::domain_error("bump_chi requires r >= 0");
    if (r <= 0.25) return 1.0;
    if (r >= 0.5) return 0.0;
    const double t = (0.5 - r) / 0.25;
    const double a = potentials_detail::cutoff_h(t);
    const double b = potentials_detail::cutoff_h(1.0 - t);
    return a / (a + b);
}

/// A radial well profile W(r) >= 0 vanishing for r >= support_radius.
/// breakpoints lists interior radii where the profile loses analyticity
/// (step edges, bump transition corners); the integrator splits there.
struct RadialPotential {
    std::function<double(double)> profile;
    double support_radius = 0.0;
    bool smooth = false;
    std::vector<double> breakpoints;
};

/// The scaled well W_R(r) = chi(r/R)/R^2 with support radius R/2.
inline RadialPotential single_well(double R) {
    if (!(R > 0.0)) throw std::domain_error("single_well requires R > 0");
    RadialPotential w;
    w.profile = [R](double r) { return bump_chi(r / R) / (R * R); };
    w.support_radius = 0.5 * R;
    w.smooth = true;
    w.breakpoints = {0.25 * R, 0.5 * R};
    return w;
}

/// Square well depth*1_[0, radius); closed-form oracle potential.
inline RadialPotential step_well(double depth, double radius) {
    if (!(depth > 0.0)) throw std::domain_error("step_well requires depth > 0");
    if (!(radius > 0.0)) throw std::domain_error("step_well requires radius > 0");
    RadialPotential w;
    w.profile = [depth, radius](double r) { return r < radius ? depth : 0.0; };
    w.support_radius = radius;
    w.smooth = false;
    w.breakpoints = {radius};
    return w;
}

/// Two disjoint radial wells: the unit well at the origin and an R-scaled
/// copy centered at distance x0_norm; disjointness requires R < x0_norm - 1.
struct DoubleWellConfig {
    double R;
    double x0_norm;
    double lambda;
    DoubleWellConfig(double R_, double x0_norm_, double lambda_)
        : R(R_), x0_norm(x0_norm_), lambda(lambda_) {
        if (!(R > 0.0)) throw std::domain_error("DoubleWellConfig requires R > 0");
        if (!(x0_norm > 1.0)) throw std::domain_error("DoubleWellConfig requires x0_norm > 1");
        if (!(lambda > 0.0)) throw std::domain_error("DoubleWellConfig requires lambda > 0");
        if (!(R < x0_norm - 1.0))
            throw std::domain_error("DoubleWellConfig requires R < x0_norm - 1 (disjoint supports)");
    }
};

/// Hash pinning the exact bump definition: FNV-1a over chi sampled at
/// r = i/1024, i = 0..1024, each formatted as a shortest round-trip decimal.
inline const std::string& chi_definition_hash() {
    static const std::string h = [] {
        std::string buf;
        for (int i = 0; i <= 1024; ++i) {
            buf += fmt_double(bump_chi(i / 1024.0));
            buf += '\n';
        }
        return hex64(fnv1a64(buf));
    }();
    return h;
}

} // namespace wellscat
