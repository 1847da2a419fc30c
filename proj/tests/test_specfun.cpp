#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <wellscat/specfun.hpp>

#include "oracles.hpp"

using wellscat::BesselOrder;
using wellscat::bessel_jy;

namespace {

struct TableRow {
    double nu, x, j, jp, y, yp;
};

/// reference values pinned from a 40-digit arbitrary-precision evaluation
const std::vector<TableRow> reference_table = {
    {0, 0.001, 0.99999975000001562, -0.00049999993750000265, -4.4714166113759228, 636.62216723113943},
    {0, 2, 0.22389077914123567, -0.5767248077568734, 0.51037567264974515, 0.10703243154093754},
    {0, 10, -0.24593576445134835, -0.043472746168861438, 0.055671167283599395, -0.24901542420695388},
    {0.5, 0.5, 0.54097378993452805, 0.44927209030887677, -0.99024588024340487, 1.531219670177933},
    {0.5, 2, 0.51301613656182776, -0.3630397445467054, 0.23478571040624846, 0.45431970896026563},
    {1, 0.001, 0.00049999993750000265, 0.49999981250001302, -636.62216723113943, 636617.69581452804},
    {1, 3.8999999999999999, -0.027244039620779925, -0.39484036370282455, 0.4078200195265379, -0.081193327577316426},
    {1.5, 1, 0.240297839123427, 0.31094994845666257, -1.1024955751601793, 1.2226444947218926},
    {2, 2, 0.35283402861563773, 0.22389077914123567, -0.6174081041906827, 0.51037567264974515},
    {2.5, 0.050000000000000003, 2.9730092411405298e-05, 0.0014862922543398822, -4283.6831174958088, 214112.70175968466},
    {2.5, 7, -0.2834366512016992, -0.097824337863315264, 0.12852374780895653, -0.27650951599023338},
    {5, 1, 0.00024975773021123444, 0.0012278503130537829, -260.40586662581222, 1268.750910100089},
    {7, 0.5, 1.2015867327763022e-08, 1.6784632027320257e-07, -3794295.8668891112, 52961715.379432231},
    {7, 12, -0.17025380412720806, -0.14441004815466194, 0.1895206955216866, -0.15085099015771303},
    {10, 9.5, 0.16502640472619115, 0.084015591250062124, -0.44390655329324591, 0.1800774617385483},
    {13.199999999999999, 2, 8.8784622736168083e-11, 5.796968494142153e-10, -274797419.56244284, 1790971036.829222},
    {13.199999999999999, 40, -0.032650117037766789, -0.11818477341547752, 0.12566336184762189, -0.032587888165008308},
    {20, 15, 0.0073602340792234856, 0.0067598609886162725, -3.3087330924737643, 2.727459777529194},
    {30, 0.050000000000000003, 3.269877096297748e-81, 1.9619236207793291e-78, -3.2448755656489021e+78, 1.9469225420806662e+81},
    {30, 29, 0.10304804665860468, 0.038969199309439352, -0.32933946771189709, 0.088486010959420019},
    {42.5, 50, -0.057357020000844389, -0.074381373941909246, 0.14384458315452286, -0.035445316339431057},
    {60, 55, 0.019046683078586299, 0.0090329960216573146, -0.72035748963950019, 0.2660788019175328},
    {60, 200, 0.034156500001271933, -0.044532797980409419, 0.04658442831621247, 0.03245543092992173},
    {60, 1000, -0.010245851850792055, -0.02303554685919116, 0.023082270887938173, -0.010238976830787165},
};

/// log-spaced grid with exact endpoints
std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

}  // namespace

TEST_CASE("pinned reference values across the working domain", "[specfun]") {
    for (const auto& row : reference_table) {
        CAPTURE(row.nu, row.x);
        const auto b = bessel_jy(row.nu, row.x);
        CHECK(std::fabs(b.j - row.j) <= 5e-14 * std::fabs(row.j));
        CHECK(std::fabs(b.jp - row.jp) <= 5e-14 * std::fabs(row.jp));
        CHECK(std::fabs(b.y - row.y) <= 5e-14 * std::fabs(row.y));
        CHECK(std::fabs(b.yp - row.yp) <= 5e-14 * std::fabs(row.yp));
    }
}

TEST_CASE("half-integer orders match the closed forms", "[specfun]") {
    for (double x : log_grid(0.1, 50.0, 60)) {
        CAPTURE(x);
        const auto b1 = bessel_jy(0.5, x);
        const auto b3 = bessel_jy(1.5, x);
        const auto b5 = bessel_jy(2.5, x);
        // scale by |J| + |Y|: the pair never vanishes together
        const double s1 = std::fabs(oracle::j_half(x)) + std::fabs(oracle::y_half(x));
        const double s3 =
            std::fabs(oracle::j_three_half(x)) + std::fabs(oracle::y_three_half(x));
        const double s5 =
            std::fabs(oracle::j_five_half(x)) + std::fabs(oracle::y_five_half(x));
        CHECK(std::fabs(b1.j - oracle::j_half(x)) <= 1e-10 * s1);
        CHECK(std::fabs(b1.y - oracle::y_half(x)) <= 1e-10 * s1);
        CHECK(std::fabs(b3.j - oracle::j_three_half(x)) <= 1e-10 * s3);
        CHECK(std::fabs(b3.y - oracle::y_three_half(x)) <= 1e-10 * s3);
        CHECK(std::fabs(b5.j - oracle::j_five_half(x)) <= 1e-10 * s5);
        CHECK(std::fabs(b5.y - oracle::y_five_half(x)) <= 1e-10 * s5);
    }
}

TEST_CASE("wronskian identity holds across the sampled grid", "[specfun]") {
    const std::vector<double> nus = {0,   0.5, 1,    1.5, 2,  3.7,
                                     5.5, 7,   10.25, 15, 22, 30};
    for (double nu : nus) {
        for (double x : log_grid(0.05, 500.0, 40)) {
            CAPTURE(nu, x);
            const auto b = bessel_jy(nu, x);
            const double w = b.j * b.yp - b.jp * b.y;
            const double ref = 2.0 / (oracle::pi * x);
            CHECK(std::fabs(w - ref) <= 1e-9 * ref);
        }
    }
}

TEST_CASE("values satisfy the defining differential equation", "[specfun]") {
    const std::vector<double> nus = {1, 1.5, 2.5, 7, 13.2, 30};
    for (double nu : nus) {
        // second derivative from the independent neighbor-order evaluations
        for (double x : log_grid(0.1, 500.0, 20)) {
            CAPTURE(nu, x);
            const auto lo = bessel_jy(nu - 1.0, x);
            const auto mid = bessel_jy(nu, x);
            const auto hi = bessel_jy(nu + 1.0, x);
            const double jpp = 0.5 * (lo.jp - hi.jp);
            const double res_j =
                jpp + mid.jp / x + (1.0 - nu * nu / (x * x)) * mid.j;
            CHECK(std::fabs(res_j) <= 1e-8 * (1.0 + std::fabs(mid.j)));
        }
        for (double x : log_grid(1.0, 500.0, 20)) {
            CAPTURE(nu, x);
            const auto lo = bessel_jy(nu - 1.0, x);
            const auto mid = bessel_jy(nu, x);
            const auto hi = bessel_jy(nu + 1.0, x);
            const double ypp = 0.5 * (lo.yp - hi.yp);
            const double res_y =
                ypp + mid.yp / x + (1.0 - nu * nu / (x * x)) * mid.y;
            CHECK(std::fabs(res_y) <= 1e-8 * (1.0 + std::fabs(mid.y)));
        }
    }
}

TEST_CASE("order helper composes l and dimension", "[specfun]") {
    CHECK(BesselOrder(0, 3).nu == 0.5);
    CHECK(BesselOrder(3, 3).nu == 3.5);
    CHECK(BesselOrder(2, 2).nu == 2.0);
    CHECK(BesselOrder(0, 6).nu == 2.0);
    CHECK_THROWS_AS(BesselOrder(-1, 3), std::domain_error);
    CHECK_THROWS_AS(BesselOrder(0, 1), std::domain_error);
}

TEST_CASE("wrappers implement the x = 0 limits", "[specfun]") {
    CHECK(wellscat::bessel_j(BesselOrder(0, 2), 0.0) == 1.0);
    CHECK(wellscat::bessel_j(BesselOrder(0, 3), 0.0) == 0.0);
    CHECK(wellscat::bessel_j(BesselOrder(4, 3), 0.0) == 0.0);
    CHECK(wellscat::bessel_j_prime(BesselOrder(0, 2), 0.0) == 0.0);
    CHECK(wellscat::bessel_j_prime(BesselOrder(0, 4), 0.0) == 0.5);
    CHECK(wellscat::bessel_j_prime(BesselOrder(2, 3), 0.0) == 0.0);
    CHECK_THROWS_AS(wellscat::bessel_j_prime(BesselOrder(0, 3), 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(wellscat::bessel_y(BesselOrder(0, 3), 0.0), std::domain_error);
    CHECK_THROWS_AS(wellscat::bessel_y_prime(BesselOrder(1, 3), 0.0),
                    std::domain_error);
    // wrappers agree with the direct evaluation away from the limit
    const auto b = bessel_jy(1.5, 2.5);
    CHECK(wellscat::bessel_j(BesselOrder(1, 3), 2.5) == b.j);
    CHECK(wellscat::bessel_y(BesselOrder(1, 3), 2.5) == b.y);
}

TEST_CASE("invalid arguments are rejected", "[specfun]") {
    CHECK_THROWS_AS(bessel_jy(-0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_jy(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bessel_jy(1.0, -2.0), std::domain_error);
    const double qnan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(bessel_jy(qnan, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_jy(1.0, qnan), std::domain_error);
}

TEST_CASE("derivative matches the neighbor-order identity", "[specfun]") {
    for (double nu : {1.0, 2.5, 9.0, 30.0}) {
        for (double x : log_grid(0.5, 300.0, 15)) {
            CAPTURE(nu, x);
            const auto lo = bessel_jy(nu - 1.0, x);
            const auto mid = bessel_jy(nu, x);
            const auto hi = bessel_jy(nu + 1.0, x);
            const double scale = std::fabs(lo.j) + std::fabs(hi.j);
            CHECK(std::fabs(mid.jp - 0.5 * (lo.j - hi.j)) <= 1e-12 * scale);
            const double yscale = std::fabs(lo.y) + std::fabs(hi.y);
            CHECK(std::fabs(mid.yp - 0.5 * (lo.y - hi.y)) <= 1e-12 * yscale);
        }
    }
}
