#pragma once

// Explicit families of unit-distance point packings that realize the lower
// bound on touching pairs, plus a horocycle packing realizing 2n-3 tangencies.
//
// The core object is a "fan cap": two hub points B, C at mutual distance d,
// a shared apex A0 forming an equilateral triangle with them, and arms of
// further equilateral triangles swung around each hub (q-3 per side, where
// q = fan_order(d)).  Reflecting the cap across the line through its two arm
// tips, then completing the fans around two of the reflected points, yields a
// fresh congruent cap; iterating grows an arbitrarily large packing whose
// edge/vertex ratio approaches 2 + 1/(4q-14).
//
// Because i iterations span a hyperbolic diameter of order i*d, coordinates
// in a single frame overflow double-precision cancellation limits long before
// i = 8 at d = 5.  Packings therefore carry an opaque extended-precision
// representation (one local frame per reflection round, linked by a constant
// hop isometry); certification transports points between frames at full
// precision and only the exported snapshot coordinates are rounded to double.

#include <memory>
#include <utility>
#include <vector>

#include "hypenny/geom.hpp"

namespace hypenny {

// ---------------------------------------------------------------------------
// Fan cap diagnostics (double precision; the cap sits near the origin).

struct FanConfig {
    double d = 0.0;      // common touching distance
    int q = 0;           // fan_order(d)
    double alpha = 0.0;  // equilateral triangle angle at side d
    double alpha4 = 0.0; // square angle at side d

    HPoint b, c;                // hubs at distance d, centered on the x-axis
    std::vector<HPoint> arm_b;  // apex A0, then A_1..A_{q-3} clockwise around b
    std::vector<HPoint> arm_c;  // apex A0, then A_-1..A_-(q-3) anticlockwise around c
    HPoint probe_b, probe_c;    // one-further fan points A_{q-2}, A_-(q-2); not
                                //   part of the packing, they witness maximality of q

    double tip_angle = 0.0;       // at tip arm_c.back(), between arm_b.back() and c
    double probe_tip_angle = 0.0; // same hinge one triangle further out; reflex
                                  //   once the probes cross the symmetry axis,
                                  //   NaN at the side length where they coincide

    bool has_square = false;    // set by place_square
    HPoint square_a, square_d;  // free corners of the side-d square on BC,
                                //   on the far side from the apex
};

// Builds the cap and verifies its defining inequalities numerically:
// all triangle sides equal d, tip separation >= d, the tip angle fits under
// the square angle which fits in the remaining angular gap (and fails to one
// triangle further out), 2*tip_angle >= alpha, pi - (alpha + tip_angle) >=
// alpha/2, and (q-2)*alpha > pi.  Throws certification_error on any failure.
FanConfig build_fan(double d);

// Erects the side-d square on BC opposite the apex and verifies that its free
// corners land strictly inside the angular gaps between each arm tip and its
// probe.  Requires tip separation >= d > probe separation.
FanConfig place_square(FanConfig f);

// ---------------------------------------------------------------------------
// Iterated reflection packings.

namespace detail {
struct PackingFrames;  // extended-precision per-point data, private to the library
}

struct PennyPacking {
    double d = 0.0;
    int q = 0;
    int rounds = 0;  // completed reflection rounds
    std::vector<HPoint> centers;             // snapshot in the base-cap frame
    std::vector<std::pair<int, int>> edges;  // declared touching pairs
    std::shared_ptr<const detail::PackingFrames> frames;
};

struct PackingCertificate {
    long long points = 0;
    long long edges = 0;
    long long pair_checks = 0;
    double max_edge_residual = 0.0;  // max |distance - d| over declared edges
    double min_pair_slack = 0.0;     // min (distance - d) over non-edges, clamped at +0.25
    double line_clearance = 0.0;     // min fold-line clearance of retained cap points
    double line_separation = 0.0;    // distance between consecutive fold lines
};

struct ConstructionResult {
    int iterations = 0;
    PennyPacking graph;
    long long n = 0;      // == 6 + (4q-14)*i
    long long e = 0;      // == 9 + (8q-27)*i
    double ratio = 0.0;   // e / n
    PackingCertificate cert;
};

// Runs i reflection rounds (1 <= i <= 12) and certifies the result: every
// declared edge has length d to within 1e-9*max(1,d), every other pair is at
// least as far apart, all retained cap points keep distance >= d/2 from each
// fold line, and consecutive fold lines are ultraparallel.
ConstructionResult iterate(double d, int i);

// Largest packing of exactly n points reachable by the same process: full
// rounds while they fit, then fan completion, then degree-2 pads (each new
// point touching exactly two others).  Certification data is attached but the
// all-pairs check is not run here; call certify_packing when wanted.
PennyPacking build_packing_n(double d, long long n);

// Edge count build_packing_n attains: n-1 for n <= 2, then 2n-3 + i(n) where
// i(n) is the number of full rounds that fit below n.
long long packing_edge_target(double d, long long n);

// All-pairs verification at tolerance tol (default 1e-9*max(1,d)).  Throws
// certification_error on any violation.
PackingCertificate certify_packing(const PennyPacking& p, double tol = -1.0);

// ---------------------------------------------------------------------------
// Horocycle packings (Euclidean data: circles inside the unit disk, each
// internally tangent to the unit circle).

struct Horocycle {
    double cx = 0.0, cy = 0.0;  // Euclidean center
    double r = 0.0;             // Euclidean radius; |center| + r == 1
};

struct HorocyclePacking {
    std::vector<Horocycle> circles;
    std::vector<std::pair<int, int>> tangencies;  // exactly 2n-3 of them
};

// Two seed horocycles of radius 1/2 tangent at the disk center, then greedy
// largest-first insertion into boundary gaps via the tangent-circle curvature
// relation k_new = k1 + k2 - 1 + 2*sqrt(k1*k2 - k1 - k2).  Deterministic.
HorocyclePacking horocycle_pack(int n);

// Checks pairwise non-overlap, tangency residuals, and boundary tangency of
// every circle, all within tol.  Throws certification_error on violation.
void certify_horocycles(const HorocyclePacking& h, double tol = 1e-12);

}  // namespace hypenny
