#include "hypenny/construct.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "hypenny/bounds.hpp"
#include "hypenny/errors.hpp"
#include "hypenny/geom.hpp"
#include "hypenny/hyptrig.hpp"

using namespace hypenny;

namespace {

double coord_gap(const HPoint& a, const HPoint& b) {
    return std::max({std::abs(a.x0 - b.x0), std::abs(a.x1 - b.x1), std::abs(a.x2 - b.x2)});
}

}  // namespace

TEST_CASE("fan_order: known values and window boundaries") {
    CHECK(fan_order(0.5) == 6);
    CHECK(fan_order(1.0) == 7);
    CHECK(fan_order(d_k(7)) == 7);
    CHECK(fan_order(2.0) == 10);
    CHECK(fan_order(5.0) == 39);

    // q is exactly the index of the window [dbar(q-1), dbar(q)).
    for (int k = 6; k <= 20; ++k) {
        double b = dbar_k(k);
        CHECK(fan_order(b - 1e-6) == k);
        CHECK(fan_order(b + 1e-6) == k + 1);
    }
    // Tiny d stays in the first window.
    CHECK(fan_order(1e-6) == 6);

    // Ties the step lower bound to the same q.
    for (double d : {0.3, 0.9, 1.7, 3.1, 6.3}) {
        CHECK(std::abs(lower_bound_all(d) - (2.0 + 1.0 / (4.0 * fan_order(d) - 14.0))) ==
              0.0);
    }

    CHECK_THROWS_AS(fan_order(0.0), std::domain_error);
}

TEST_CASE("fan_order: random window consistency across (0.05, 10)") {
    std::mt19937 rng(491375);
    std::uniform_real_distribution<double> draw(0.05, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        double d = draw(rng);
        int q = fan_order(d);
        CHECK(q >= 6);
        if (q >= 7) CHECK(dbar_k(q - 1) <= d + 1e-9);
        CHECK(d <= dbar_k(q) + 1e-9);
    }
}

TEST_CASE("build_fan: structure and inequalities at moderate d") {
    for (double d : {0.3, 0.75, 1.0, d_k(7), 2.0, 3.0}) {
        CAPTURE(d);
        FanConfig f = build_fan(d);  // internal certification must not throw
        CHECK(f.q == fan_order(d));
        CHECK(static_cast<int>(f.arm_b.size()) == f.q - 2);
        CHECK(static_cast<int>(f.arm_c.size()) == f.q - 2);
        CHECK(std::abs(hdist(f.b, f.c) - d) < 1e-12);
        // Shared apex, computed independently around each hub.
        CHECK(coord_gap(f.arm_b[0], f.arm_c[0]) < 1e-9 * (1.0 + std::cosh(1.5 * d)));
        // The four safety inequalities, re-stated externally.  The probe hinge
        // is undefined (NaN) where the probes coincide, e.g. at d_k(7).
        CHECK(f.tip_angle <= f.alpha4 + 1e-9);
        CHECK(f.alpha4 <= 2.0 * std::acos(-1.0) - (f.q - 2) * f.alpha + 1e-9);
        CHECK((std::isnan(f.probe_tip_angle) || f.probe_tip_angle > f.alpha4 - 1e-9));
        CHECK(2.0 * f.tip_angle >= f.alpha - 1e-9);
        CHECK(std::acos(-1.0) - (f.alpha + f.tip_angle) >= f.alpha / 2 - 1e-9);
        // Maximality witness: one more triangle per arm would overlap.
        CHECK(hdist(f.probe_b, f.probe_c) < d + 1e-9);
        CHECK(hdist(f.arm_b.back(), f.arm_c.back()) >= d - 1e-9);
    }
    CHECK_THROWS_AS(build_fan(0.0), std::domain_error);
    CHECK_THROWS_AS(build_fan(-1.0), std::domain_error);
}

TEST_CASE("build_fan: at d_k(k) the two probes close up into one point") {
    // The threshold side lengths are exactly where the one-further fan points
    // from the two hubs land on the same spot, so the probe hinge degenerates.
    for (int k : {7, 8, 9, 10}) {
        CAPTURE(k);
        const double d = d_k(k);
        FanConfig f = build_fan(d);
        CHECK(f.q == k);
        CHECK(coord_gap(f.probe_b, f.probe_c) < 1e-7 * (1.0 + std::cosh(1.5 * d)));
        CHECK(std::isnan(f.probe_tip_angle));
    }
}

TEST_CASE("build_fan: random draws keep their internal certification") {
    std::mt19937 rng(77113);
    std::uniform_real_distribution<double> draw(0.05, 4.0);
    for (int trial = 0; trial < 60; ++trial) {
        double d = draw(rng);
        CAPTURE(d);
        FanConfig f = build_fan(d);
        CHECK(f.q == fan_order(d));
    }
}

TEST_CASE("place_square: side lengths, angles, containment") {
    for (double d : {1.0, 3.0}) {
        CAPTURE(d);
        FanConfig f = place_square(build_fan(d));
        CHECK(f.has_square);
        CHECK(std::abs(hdist(f.square_a, f.b) - d) < 1e-9);
        CHECK(std::abs(hdist(f.square_d, f.c) - d) < 1e-9);
        CHECK(std::abs(hdist(f.square_a, f.square_d) - d) < 1e-9);
        CHECK(std::abs(angle_at(f.b, f.square_a, f.c) - f.alpha4) < 1e-9);
        CHECK(std::abs(angle_at(f.c, f.square_d, f.b) - f.alpha4) < 1e-9);
        CHECK(std::abs(angle_at(f.square_a, f.square_d, f.b) - f.alpha4) < 1e-9);
        // Free corners sit on the far side from the apex.
        CHECK(f.square_a.x2 > 0.0);
        CHECK(f.square_d.x2 > 0.0);
        CHECK(f.arm_b[0].x2 < 0.0);
    }
}

TEST_CASE("iterate: closed-form counts and the exact linear relation") {
    for (double d : {0.5, 1.0, d_k(7), 2.0}) {
        CAPTURE(d);
        const long long q = fan_order(d);
        const long long period = 4 * q - 14;
        for (int i = 1; i <= 4; ++i) {
            ConstructionResult res = iterate(d, i);
            CHECK(res.n == 6 + period * i);
            CHECK(res.e == 9 + (8 * q - 27) * i);
            // e = (2 + 1/(4q-14)) n - 3 - 6/(4q-14), as an integer identity.
            CHECK(period * res.e == (2 * period + 1) * res.n - 3 * period - 6);
            CHECK(res.ratio == doctest::Approx(static_cast<double>(res.e) /
                                               static_cast<double>(res.n)));
            CHECK(res.graph.rounds == i);
            CHECK(static_cast<long long>(res.graph.centers.size()) == res.n);
            CHECK(res.cert.points == res.n);
            CHECK(res.cert.edges == res.e);
        }
    }
    CHECK_THROWS_AS(iterate(1.0, 0), std::domain_error);
    CHECK_THROWS_AS(iterate(1.0, 13), std::domain_error);
    CHECK_THROWS_AS(iterate(0.0, 1), std::domain_error);
}

TEST_CASE("iterate: certification margins are comfortable") {
    for (double d : {0.5, 1.0, 2.0}) {
        CAPTURE(d);
        ConstructionResult res = iterate(d, 4);
        CHECK(res.cert.max_edge_residual < 1e-12);
        CHECK(res.cert.min_pair_slack > -1e-12);
        CHECK(res.cert.line_clearance >= d / 2 - 1e-9);
        CHECK(res.cert.line_separation > 0.0);
        CHECK(res.cert.pair_checks == res.n * (res.n - 1) / 2);
    }
    // A critical distance: extra pairs at exactly d may exist but certification
    // (edges exact, everything else >= d) must still pass.
    ConstructionResult crit = iterate(d_k(7), 3);
    CHECK(crit.cert.max_edge_residual < 1e-12);
    CHECK(crit.cert.min_pair_slack > -1e-12);
}

TEST_CASE("iterate: large-d sanity at q = 39") {
    ConstructionResult res = iterate(5.0, 2);
    CHECK(res.graph.q == 39);
    CHECK(res.n == 6 + 142 * 2);
    CHECK(res.e == 9 + 285 * 2);
    CHECK(res.cert.max_edge_residual < 1e-12);
    CHECK(res.cert.min_pair_slack > -1e-12);
    CHECK(res.cert.line_clearance >= 2.5 - 1e-9);
}

TEST_CASE("iterate: ratio approaches the step lower bound from below") {
    // At d = d_k(7) the fan order is 7, so the ratio tends to 2 + 1/14.
    ConstructionResult res = iterate(d_k(7), 5);
    CHECK(res.n == 76);
    CHECK(res.e == 154);
    double limit = 2.0 + 1.0 / 14.0;
    CHECK(res.ratio < limit);
    CHECK(limit - res.ratio == doctest::Approx((3.0 + 6.0 / 14.0) / 76.0).epsilon(1e-12));
    // Deficit shrinks with n.
    CHECK(limit - iterate(d_k(7), 8).ratio < limit - res.ratio);
}

TEST_CASE("build_packing_n: realized edge counts match the target everywhere") {
    for (double d : {0.5, 1.0}) {
        CAPTURE(d);
        const long long q = fan_order(d);
        const long long two_rounds = 6 + 2 * (4 * q - 14) + 6;
        for (long long n = 1; n <= two_rounds; ++n) {
            PennyPacking p = build_packing_n(d, n);
            CHECK(static_cast<long long>(p.centers.size()) == n);
            CHECK(static_cast<long long>(p.edges.size()) == packing_edge_target(d, n));
        }
    }
    // Small-n targets are the outerplanar maximum 2n-3.
    CHECK(packing_edge_target(1.0, 1) == 0);
    CHECK(packing_edge_target(1.0, 2) == 1);
    CHECK(packing_edge_target(1.0, 3) == 3);
    CHECK(packing_edge_target(1.0, 11) == 19);
    // One full round at q = 7 starts at n = 20 and adds one extra edge.
    CHECK(packing_edge_target(1.0, 19) == 35);
    CHECK(packing_edge_target(1.0, 20) == 38);
    CHECK(packing_edge_target(1.0, 21) == 40);
    CHECK_THROWS_AS(build_packing_n(1.0, 0), std::domain_error);
    CHECK_THROWS_AS(build_packing_n(1.0, 6 + 13 * 14), std::domain_error);
}

TEST_CASE("build_packing_n: padded states certify with no accidental tangency") {
    for (long long n : {5, 11, 17, 20, 27, 34, 41}) {
        CAPTURE(n);
        PennyPacking p = build_packing_n(1.0, n);
        PackingCertificate cert = certify_packing(p);
        CHECK(cert.max_edge_residual < 1e-12);
        if (n > 2) CHECK(cert.min_pair_slack > 1e-7);  // strict gap: no stray touching pair
    }
}

TEST_CASE("build_packing_n: the -4 intercept bound fails on exactly five residues") {
    // e(n) = 2n - 3 + i(n) satisfies e >= (2 + 1/D) n - 4  iff  n - 6 - D*i(n)
    // <= D - 6 (D = 4q - 14): the last five pad positions of every window miss
    // the bound by up to 5/D.  Verified here as exact integer arithmetic.
    for (double d : {1.0, 2.0}) {
        CAPTURE(d);
        const long long q = fan_order(d);
        const long long D = 4 * q - 14;
        for (long long n = 3; n <= 6 + 3 * D + (D - 1); ++n) {
            const long long e = packing_edge_target(d, n);
            const long long i = (n >= 4 * q - 8) ? (n - 6) / D : 0;
            const bool bound_holds = D * e >= (2 * D + 1) * n - 4 * D;
            const bool expect = (n - 6 - D * i) <= D - 6;
            CHECK(bound_holds == expect);
        }
    }
}

TEST_CASE("certify_packing: rejects tampered data") {
    PennyPacking p = build_packing_n(1.0, 12);
    CHECK_NOTHROW(certify_packing(p));
    // Declaring a far pair as an edge must fail the exactness check.
    PennyPacking bad = p;
    bad.edges.emplace_back(6, 10);  // the two arm tips, separated by more than d
    CHECK_THROWS_AS(certify_packing(bad), certification_error);
    // A packing stripped of its frame data cannot be certified.
    PennyPacking hollow = p;
    hollow.frames.reset();
    CHECK_THROWS_AS(certify_packing(hollow), std::domain_error);
}

TEST_CASE("packing snapshot: double centers agree with certified structure") {
    // For a small packing the double snapshot itself must realize the edges.
    PennyPacking p = build_packing_n(1.0, 34);
    for (auto [a, b] : p.edges) {
        CHECK(std::abs(hdist(p.centers[static_cast<size_t>(a)],
                             p.centers[static_cast<size_t>(b)]) -
                       1.0) < 1e-9);
    }
    int on_sheet = 0;
    for (const HPoint& c : p.centers)
        if (std::abs(minkowski(c, c) - 1.0) < 1e-9) ++on_sheet;
    CHECK(on_sheet == static_cast<int>(p.centers.size()));
}

TEST_CASE("horocycle_pack: seeds, first insertions, exact small geometry") {
    HorocyclePacking two = horocycle_pack(2);
    REQUIRE(two.circles.size() == 2);
    CHECK(two.tangencies.size() == 1);
    CHECK(two.circles[0].r == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(two.circles[0].cy - 0.5) < 1e-15);
    CHECK(std::abs(two.circles[1].cy + 0.5) < 1e-15);

    HorocyclePacking three = horocycle_pack(3);
    REQUIRE(three.circles.size() == 3);
    CHECK(std::abs(three.circles[2].r - 1.0 / 3.0) < 1e-15);
    CHECK(std::abs(three.circles[2].cx + 2.0 / 3.0) < 1e-14);
    CHECK(std::abs(three.circles[2].cy) < 1e-14);

    HorocyclePacking four = horocycle_pack(4);
    CHECK(std::abs(four.circles[3].cx - 2.0 / 3.0) < 1e-14);

    // Next insertion is rational too: radius 1/6 at (-2/3, 1/2).
    HorocyclePacking five = horocycle_pack(5);
    CHECK(std::abs(five.circles[4].r - 1.0 / 6.0) < 1e-14);
    CHECK(std::abs(five.circles[4].cx + 2.0 / 3.0) < 1e-13);
    CHECK(std::abs(five.circles[4].cy - 0.5) < 1e-13);

    CHECK_THROWS_AS(horocycle_pack(1), std::domain_error);
}

TEST_CASE("horocycle_pack: 2n-3 tangencies, certified, deterministic") {
    for (int n : {2, 3, 4, 9, 10, 50, 137, 200}) {
        CAPTURE(n);
        HorocyclePacking h = horocycle_pack(n);
        CHECK(static_cast<int>(h.circles.size()) == n);
        CHECK(static_cast<int>(h.tangencies.size()) == 2 * n - 3);
        CHECK_NOTHROW(certify_horocycles(h, 1e-12));
    }
    // Pinned counts: n = 50 gives 97 tangencies, n = 9 gives 15.
    CHECK(horocycle_pack(50).tangencies.size() == 97);
    CHECK(horocycle_pack(9).tangencies.size() == 15);

    // Greedy largest-first: inserted radii never increase.
    HorocyclePacking h = horocycle_pack(200);
    for (size_t j = 3; j < h.circles.size(); ++j)
        CHECK(h.circles[j].r <= h.circles[j - 1].r + 1e-18);

    // Determinism: a second run reproduces every byte of the first.
    HorocyclePacking h2 = horocycle_pack(200);
    REQUIRE(h2.circles.size() == h.circles.size());
    bool same = h2.tangencies == h.tangencies;
    for (size_t j = 0; j < h.circles.size(); ++j)
        same = same && h.circles[j].cx == h2.circles[j].cx &&
               h.circles[j].cy == h2.circles[j].cy && h.circles[j].r == h2.circles[j].r;
    CHECK(same);
}

TEST_CASE("certify_horocycles: rejects overlaps and broken tangencies") {
    HorocyclePacking h = horocycle_pack(6);
    CHECK_NOTHROW(certify_horocycles(h, 1e-12));
    HorocyclePacking bad = h;
    bad.circles[0].cx += 1e-6;
    CHECK_THROWS_AS(certify_horocycles(bad, 1e-12), certification_error);
    HorocyclePacking extra = h;
    extra.tangencies.emplace_back(0, 4);
    CHECK_THROWS_AS(certify_horocycles(extra, 1e-12), certification_error);
}
