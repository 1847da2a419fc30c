#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>

#include <wellscat/transparency.hpp>

#include "oracles.hpp"

using wellscat::certify_non_transparency;
using wellscat::DoubleWellConfig;
using wellscat::IdenticallyZeroError;
using wellscat::scan_zeros_in_k;
using wellscat::scan_zeros_in_R;
using wellscat::suggest_r;
using wellscat::wronskian_d_full;
using wellscat::ZeroScan;

TEST_CASE("free determinant vanishes identically", "[transparency]") {
    for (double k : {0.3, 1.0, 7.5}) {
        for (double r : {0.5, 1.0, 2.0}) {
            CAPTURE(k, r);
            const auto d = wronskian_d_full(1, 3, k, 0.0, 1.0, r);
            CHECK(d.raw == 0.0);
            CHECK(d.normalized == 0.0);
        }
    }
    CHECK_THROWS_AS(scan_zeros_in_k(0, 3, 0.0, 1.0, 0.5, 2.0), IdenticallyZeroError);
    CHECK_THROWS_AS(scan_zeros_in_R(0, 3, 0.0, 1.0, 0.5, 2.0), IdenticallyZeroError);
}

TEST_CASE("scaled determinant is constant in the evaluation radius",
          "[transparency]") {
    const double base = 0.5 * wronskian_d_full(0, 3, 1.2, 50.0, 1.0, 0.5).raw;
    for (double r : {0.75, 1.0, 1.5, 2.0}) {
        CAPTURE(r);
        const double scaled = r * wronskian_d_full(0, 3, 1.2, 50.0, 1.0, r).raw;
        CHECK(std::fabs(scaled - base) <= 1e-8 * std::fabs(base));
    }
}

TEST_CASE("determinant collapses under the frequency-radius rescaling",
          "[transparency]") {
    for (int l : {0, 2}) {
        const auto d1 = wronskian_d_full(l, 3, 1.7, 50.0, 1.0, 1.0);
        for (double c : {0.5, 2.0, 5.0}) {
            CAPTURE(l, c);
            const auto dc = wronskian_d_full(l, 3, c * 1.7, 50.0, 1.0 / c, 1.0 / c);
            CHECK(std::fabs(dc.raw / c - d1.raw) <= 1e-7 * std::fabs(d1.raw));
            CHECK(std::fabs(dc.normalized - d1.normalized) <=
                  1e-7 * std::fabs(d1.normalized));
        }
    }
}

TEST_CASE("determinant scales linearly in a weak coupling", "[transparency]") {
    const double d1 = wronskian_d_full(0, 3, 1.0, 1.0, 1.0, 1.0).normalized;
    const double d01 = wronskian_d_full(0, 3, 1.0, 0.1, 1.0, 1.0).normalized;
    const double d001 = wronskian_d_full(0, 3, 1.0, 0.01, 1.0, 1.0).normalized;
    CHECK(std::fabs(d01) < std::fabs(d1));
    CHECK(std::fabs(d001) < std::fabs(d01));
    CHECK(d01 / d1 == Catch::Approx(0.1).margin(0.05));
    CHECK(d001 / d01 == Catch::Approx(0.1).margin(0.05));
}

TEST_CASE("rejects invalid determinant arguments", "[transparency]") {
    CHECK_THROWS_AS(wronskian_d_full(0, 3, 0.0, 50.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(wronskian_d_full(0, 3, -1.0, 50.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(wronskian_d_full(0, 3, 1.0, -5.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(wronskian_d_full(0, 3, 1.0, 50.0, 1.0, 0.3), std::domain_error);
    CHECK_THROWS_AS(scan_zeros_in_k(0, 3, 50.0, 1.0, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(scan_zeros_in_R(0, 3, 50.0, 1.0, -1.0, 2.0), std::invalid_argument);
}

TEST_CASE("frequency scan isolates the known zero", "[transparency]") {
    const ZeroScan scan = scan_zeros_in_k(0, 3, 200.0, 1.0, 0.5, 20.0);
    REQUIRE(scan.zeros.size() == 1);
    CHECK(scan.tangencies.empty());
    const auto& z = scan.zeros.front();
    CHECK(z.root == Catch::Approx(8.068315919).margin(1e-5));
    CHECK(z.bracket_lo < z.root);
    CHECK(z.bracket_hi > z.root);
    CHECK(z.bracket_hi - z.bracket_lo < 1e-8);
    CHECK(std::fabs(z.f_at_root) < 1e-9);
    // the zero is a pi-crossing of the phase branch
    const auto crossings =
        wellscat::almost_transparent_frequencies(0, 3, 200.0, wellscat::single_well(1.0), 0.5, 20.0);
    REQUIRE(crossings.size() == 1);
    CHECK(std::fabs(crossings.front().k0 - z.root) < 1e-6);
}

TEST_CASE("scan is stable under grid halving", "[transparency]") {
    const ZeroScan coarse = scan_zeros_in_k(0, 3, 200.0, 1.0, 6.0, 10.0, 0.01);
    const ZeroScan fine = scan_zeros_in_k(0, 3, 200.0, 1.0, 6.0, 10.0, 0.005);
    REQUIRE(coarse.zeros.size() == 1);
    REQUIRE(fine.zeros.size() == 1);
    CHECK(std::fabs(coarse.zeros[0].root - fine.zeros[0].root) < 1e-8);
}

TEST_CASE("scan windows beyond the zero stay empty", "[transparency]") {
    const ZeroScan tail = scan_zeros_in_k(0, 3, 200.0, 1.0, 12.0, 20.0);
    CHECK(tail.zeros.empty());
    CHECK(tail.tangencies.empty());
    const ZeroScan weak = scan_zeros_in_k(0, 3, 50.0, 1.0, 0.1, 20.0);
    CHECK(weak.zeros.empty());
    CHECK(weak.tangencies.empty());
}

TEST_CASE("radius scan inverts the frequency scan", "[transparency]") {
    const ZeroScan kscan = scan_zeros_in_k(0, 3, 200.0, 1.0, 6.0, 10.0);
    REQUIRE(kscan.zeros.size() == 1);
    const double k1 = kscan.zeros[0].root;
    // zeros depend on the product k R only: at fixed k = k1 the root sits at R = 1
    const ZeroScan rscan = scan_zeros_in_R(0, 3, 200.0, k1, 0.8, 1.2);
    REQUIRE(rscan.zeros.size() == 1);
    CHECK(std::fabs(rscan.zeros[0].root - 1.0) < 1e-7);
}

TEST_CASE("multi-zero channel is fully resolved", "[transparency]") {
    const ZeroScan scan = scan_zeros_in_k(3, 3, 400.0, 1.0, 0.5, 20.0);
    REQUIRE(scan.zeros.size() == 2);
    CHECK(scan.zeros[0].root == Catch::Approx(6.163718).margin(1e-3));
    CHECK(scan.zeros[1].root == Catch::Approx(17.418612).margin(1e-3));
    for (const auto& z : scan.zeros) REQUIRE(std::fabs(z.f_at_root) < 1e-9);
}

TEST_CASE("certificate passes for a zero-free coupling", "[transparency]") {
    const DoubleWellConfig cfg(0.8, 3.0, 50.0);
    const auto cert = certify_non_transparency(cfg, 4, 4, 0.1, 20.0);
    CHECK(cert.pass);
    CHECK_FALSE(cert.boundary_violation);
    CHECK_FALSE(cert.tangency_found);
    CHECK(std::isinf(cert.margin));
    for (const auto& [lt, roots] : cert.unit_well_zeros) {
        CAPTURE(lt);
        CHECK(roots.empty());
    }
    CHECK(cert.unit_well_zeros.size() == 5);
    CHECK(cert.witness_lt == -1);
    CHECK(cert.diagnostics.empty());
    // heuristic cutoff bookkeeping is recorded
    CHECK(cert.nu_star_unit == Catch::Approx(0.5 * std::sqrt(400.0 + 50.0)));
    CHECK(cert.truncation_covers == false);
}

TEST_CASE("certificate fails on the adversarial radius", "[transparency]") {
    // R = 1 duplicates the unit well, so its zero frequency is shared
    const DoubleWellConfig cfg(1.0, 3.0, 200.0);
    const auto cert = certify_non_transparency(cfg, 2, 2, 0.5, 20.0);
    CHECK_FALSE(cert.pass);
    CHECK(cert.margin < 1e-7);
    CHECK(cert.witness_lt == 0);
    CHECK(cert.witness_l == 0);
    CHECK(cert.witness_k == Catch::Approx(8.068315919).margin(1e-5));
    CHECK(cert.pass == (!cert.boundary_violation && !cert.tangency_found &&
                        cert.margin > cert.margin_threshold));
}

TEST_CASE("certificate flags boundary-adjacent zeros", "[transparency]") {
    const DoubleWellConfig cfg(0.8, 3.0, 200.0);
    const auto cert = certify_non_transparency(cfg, 0, 0, 7.0, 8.07);
    CHECK(cert.boundary_violation);
    CHECK_FALSE(cert.pass);
    CHECK_FALSE(cert.diagnostics.empty());
}

TEST_CASE("certificate validates its inputs", "[transparency]") {
    const DoubleWellConfig cfg(0.8, 3.0, 50.0);
    CHECK_THROWS_AS(certify_non_transparency(cfg, -1, 2, 0.1, 20.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(certify_non_transparency(cfg, 2, -1, 0.1, 20.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(certify_non_transparency(cfg, 2, 2, 0.1, 20.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("radius search avoids the adversarial radius", "[transparency]") {
    const auto res = suggest_r({200.0}, 3.0, 0.9, 1.1, 0, 0, 0.5, 12.0, 41);
    CHECK(res.scans_clean);
    CHECK(res.samples.size() == 41);
    CHECK(res.margin > 1e-4);
    CHECK(std::fabs(res.R_best - 1.0) > 0.04);
    // the sample at R = 1 shares the unit-well zero and its margin collapses
    double margin_at_one = 1.0;
    for (const auto& [r, m] : res.samples)
        if (std::fabs(r - 1.0) < 1e-9) margin_at_one = m;
    CHECK(margin_at_one < 1e-6);
    for (const auto& [r, m] : res.samples) {
        REQUIRE(m >= 0.0);
        REQUIRE(m <= res.margin);
    }
}

TEST_CASE("radius search is vacuous for a zero-free coupling", "[transparency]") {
    const auto res = suggest_r({50.0, 50.0}, 3.0, 0.5, 1.0, 2, 2, 0.5, 10.0, 11);
    CHECK(res.scans_clean);
    CHECK(std::isinf(res.margin));
    CHECK(res.R_best == 0.5);  // argmax ties resolve to the smallest sample
}

TEST_CASE("radius search validates its inputs", "[transparency]") {
    CHECK_THROWS_AS(suggest_r({}, 3.0, 0.5, 1.0, 2, 2, 0.5, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(suggest_r({-5.0}, 3.0, 0.5, 1.0, 2, 2, 0.5, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(suggest_r({50.0}, 3.0, 0.5, 2.5, 2, 2, 0.5, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(suggest_r({50.0}, 3.0, 1.0, 0.5, 2, 2, 0.5, 10.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(suggest_r({50.0}, 3.0, 0.5, 1.0, 2, 2, 0.5, 10.0, 1),
                    std::invalid_argument);
}
