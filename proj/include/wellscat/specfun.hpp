#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace wellscat {

namespace specfun_detail {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243104;
inline constexpr double zeta3 = 1.2020569031595942854;

/// Modified Lentz for f = J'_nu/J_nu = nu/x - 1/(b1 - 1/(b2 - ...)), b_k = 2(nu+k)/x.
/// Tracks the sign of J_nu via denominator sign flips; writes it to isign.
inline double cf1(double nu, double x, int& isign) {
    constexpr double tiny = 1e-300;
    isign = 1;
    double f = nu / x;
    if (std::fabs(f) < tiny) f = tiny;
    double C = f;
    double D = 0.0;
    for (int k = 1; k < 60000; ++k) {
        const double b = 2.0 * (nu + k) / x;
        D = b - D;
        if (std::fabs(D) < tiny) D = tiny;
        C = b - 1.0 / C;
        if (std::fabs(C) < tiny) C = tiny;
        D = 1.0 / D;
        const double delta = C * D;
        f *= delta;
        if (D < 0.0) isign = -isign;
        if (std::fabs(delta - 1.0) < 1e-16) return f;
    }
    throw std::runtime_error("bessel cf1 did not converge");
}

/// (J' + iY')/(J + iY) at order mu for x >= 2, returned as (p, q).
/// p + iq = -1/(2x) + i + (i/x)*CF with a_k = (k-1/2)^2 - mu^2, b_k = 2(x + ik).
inline void cf2(double mu, double x, double& p, double& q) {
    constexpr double tiny = 1e-300;
    std::complex<double> fc(tiny, 0.0);
    std::complex<double> C = fc;
    std::complex<double> D(0.0, 0.0);
    for (int k = 1; k < 10000; ++k) {
        const std::complex<double> a((k - 0.5) * (k - 0.5) - mu * mu, 0.0);
        const std::complex<double> b(2.0 * x, 2.0 * k);
        D = b + a * D;
        if (D == 0.0) D = std::complex<double>(tiny, 0.0);
        C = b + a / C;
        if (C == 0.0) C = std::complex<double>(tiny, 0.0);
        D = 1.0 / D;
        const std::complex<double> delta = C * D;
        fc *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            const std::complex<double> ratio =
                std::complex<double>(-0.5 / x, 1.0) + std::complex<double>(0.0, 1.0) / x * fc;
            p = ratio.real();
            q = ratio.imag();
            return;
        }
    }
    throw std::runtime_error("bessel cf2 did not converge");
}

/// gam1 = (1/G(1-mu) - 1/G(1+mu))/(2 mu) and gam2 = (1/G(1-mu) + 1/G(1+mu))/2,
/// with a Taylor fallback near mu = 0 where the difference quotient cancels.
inline void gam1_gam2(double mu, double& g1, double& g2) {
    if (std::fabs(mu) < 1e-4) {
        const double pi2 = std::numbers::pi * std::numbers::pi;
        const double b2 = euler_gamma * euler_gamma / 2.0 - pi2 / 12.0;
        const double b3 = euler_gamma * euler_gamma * euler_gamma / 6.0
                          - euler_gamma * pi2 / 12.0 + zeta3 / 3.0;
        g1 = -euler_gamma - b3 * mu * mu;
        g2 = 1.0 + b2 * mu * mu;
        return;
    }
    const double gp = 1.0 / std::tgamma(1.0 + mu);
    const double gm = 1.0 / std::tgamma(1.0 - mu);
    g1 = (gm - gp) / (2.0 * mu);
    g2 = (gm + gp) / 2.0;
}

struct temme_pair {
    double ymu;
    double ymu1;
};

/// Y_mu and Y_{mu+1} for |mu| <= 1/2 and 0 < x <= 2 via the reflection series.
inline temme_pair temme_y(double mu, double x) {
    const double pi = std::numbers::pi;
    const double ln2x = std::log(2.0 / x);
    const double sigma = mu * ln2x;
    double g1_0, g2_0;
    gam1_gam2(mu, g1_0, g2_0);
    const double shs = std::fabs(sigma) > 1e-8 ? std::sinh(sigma) / sigma
                                               : 1.0 + sigma * sigma / 6.0;
    const double chs = std::cosh(sigma);
    const double pimu = pi * mu;
    const double fact = std::fabs(pimu) > 1e-8 ? pimu / std::sin(pimu)
                                               : 1.0 + pimu * pimu / 6.0;
    const double tant = std::tan(0.5 * pimu);
    const double E = std::pow(0.5 * x, mu);
    const double Einv = 1.0 / E;

    double Gp = 1.0 / std::tgamma(1.0 + mu);
    double Gm = 1.0 / std::tgamma(1.0 - mu);
    double g1 = g1_0;
    double g2 = g2_0;
    double ck = 1.0;
    const double mx4 = -0.25 * x * x;

    double sumY = 0.0;
    double sumY1 = 0.0;
    for (int k = 0;; ++k) {
        const double Ak = E * Gp;
        const double Tk = -Ak * tant - (2.0 / pi) * fact * (ln2x * shs * g2 + chs * g1);
        sumY += ck * Tk;
        const double pair = ck * (0.5 * x)
                            * (Tk / (k + 1 + mu)
                               - Einv * Gm * fact / (pi * (k + 1) * (k + 1 + mu)));
        sumY1 += pair;
        const double term_size = std::fabs(ck)
                                 * (std::fabs(Tk) + std::fabs(pair) / (0.5 * x + 1e-300));
        if (k > 2 && term_size < 1e-18 * (std::fabs(sumY) + std::fabs(sumY1) + 1e-30)) break;
        if (k > 200) throw std::runtime_error("bessel_y series did not converge");
        ck *= mx4 / (k + 1);
        const double kk = k + 1;
        const double denom = kk * kk - mu * mu;
        const double g1n = (kk * g1 + g2) / denom;
        const double g2n = (kk * g2 + mu * mu * g1) / denom;
        g1 = g1n;
        g2 = g2n;
        Gp /= kk + mu;
        Gm /= kk - mu;
    }
    const double Gm0 = 1.0 / std::tgamma(1.0 - mu);
    return {sumY, -(2.0 / (pi * x)) * fact * Gm0 * Einv + sumY1};
}

} // namespace specfun_detail

/// Bessel order nu = l + (n-2)/2 from angular quantum number l and dimension n.
struct BesselOrder {
    double nu;
    BesselOrder(int l, int n) {
        if (l < 0) throw std::domain_error("angular quantum number l must be >= 0");
        if (n < 2) throw std::domain_error("space dimension n must be >= 2");
        nu = l + 0.5 * (n - 2);
    }
};

/// J, J', Y, Y' at a common order and argument.
struct BesselJY {
    double j;
    double jp;
    double y;
    double yp;
};

/// J_nu, J'_nu, Y_nu, Y'_nu for nu >= 0 and x > 0 (Steed's method: CF1 with a
/// signed Lentz seed, downward (J, J') recurrence, CF2 for x >= 2, reflection
/// series otherwise, upward Y recurrence).
inline BesselJY bessel_jy(double nu, double x) {
    namespace d = specfun_detail;
    if (!(nu >= 0.0)) throw std::domain_error("bessel order must be >= 0");
    if (!(x > 0.0)) throw std::domain_error("bessel argument must be > 0");
    const double W = 2.0 / (std::numbers::pi * x);
    int isign = 0;
    const double f = d::cf1(nu, x, isign);
    double J, Jp, Y, Yp;
    if (x < 2.0) {
        const int nl = static_cast<int>(nu + 0.5);
        const double mu = nu - nl;
        const d::temme_pair t = d::temme_y(mu, x);
        double yl = t.ymu;
        double yl1 = t.ymu1;
        double lam = mu;
        for (int i = 0; i < nl; ++i) {
            const double ynext = (2.0 * (lam + 1.0) / x) * yl1 - yl;
            yl = yl1;
            yl1 = ynext;
            lam += 1.0;
        }
        Y = yl;
        Yp = (nu / x) * yl - yl1;
        J = W / (Yp - f * Y);
        Jp = f * J;
    } else {
        const int nl = std::max(0, static_cast<int>(nu - x + 1.5));
        const double mu = nu - nl;
        // downward (J, J') recurrence from nu to mu, unnormalized; the seed
        // carries the true sign of J_nu so the Wronskian rescale lands right
        double Ju = isign * 1e-30;
        double Jpu = f * Ju;
        double Jnu_save = Ju;
        double Jpnu_save = Jpu;
        double lam = nu;
        for (int i = 0; i < nl; ++i) {
            const double Jm = (lam / x) * Ju + Jpu;
            const double Jpm = ((lam - 1.0) / x) * Jm - Ju;
            Ju = Jm;
            Jpu = Jpm;
            lam -= 1.0;
            if (std::fabs(Ju) > 1e200) {
                Ju *= 1e-200;
                Jpu *= 1e-200;
                Jnu_save *= 1e-200;
                Jpnu_save *= 1e-200;
                if (Jnu_save == 0.0)
                    throw std::overflow_error("bessel recurrence exceeded representable range");
            }
        }
        const double fmu = Jpu / Ju;
        double p, q;
        d::cf2(mu, x, p, q);
        const double gamma = (p - fmu) / q;
        const double Jmu = std::copysign(std::sqrt(W / (q + gamma * (p - fmu))), Ju);
        const double scale = Jmu / Ju;
        J = Jnu_save * scale;
        Jp = Jpnu_save * scale;
        const double Ymu = gamma * Jmu;
        const double Ymu1 = (mu / x) * Ymu - (q * Jmu + p * Ymu);
        double yl = Ymu;
        double yl1 = Ymu1;
        lam = mu;
        for (int i = 0; i < nl; ++i) {
            const double ynext = (2.0 * (lam + 1.0) / x) * yl1 - yl;
            yl = yl1;
            yl1 = ynext;
            lam += 1.0;
        }
        Y = yl;
        Yp = (nu / x) * yl - yl1;
    }
    return {J, Jp, Y, Yp};
}

/// J_nu(x); x = 0 is served by the series limit.
inline double bessel_j(BesselOrder order, double x) {
    if (x == 0.0) return order.nu == 0.0 ? 1.0 : 0.0;
    return bessel_jy(order.nu, x).j;
}

/// J'_nu(x); the x = 0 limit exists only for nu = 0 or nu >= 1.
inline double bessel_j_prime(BesselOrder order, double x) {
    if (x == 0.0) {
        if (order.nu == 0.0) return 0.0;
        if (order.nu == 1.0) return 0.5;
        if (order.nu > 1.0) return 0.0;
        throw std::domain_error("bessel_j_prime diverges at x = 0 for 0 < nu < 1");
    }
    return bessel_jy(order.nu, x).jp;
}

/// Y_nu(x) for x > 0.
inline double bessel_y(BesselOrder order, double x) {
    if (x == 0.0) throw std::domain_error("bessel_y diverges as x -> 0+");
    return bessel_jy(order.nu, x).y;
}

/// Y'_nu(x) for x > 0.
inline double bessel_y_prime(BesselOrder order, double x) {
    if (x == 0.0) throw std::domain_error("bessel_y_prime diverges as x -> 0+");
    return bessel_jy(order.nu, x).yp;
}

} // namespace wellscat
