#pragma once

// Trigonometry of equilateral hyperbolic triangles (constant curvature -1).
//
// Throughout, d is the side length of an equilateral triangle and alpha its
// interior angle.  alpha(d) is strictly decreasing: alpha -> pi/3 as d -> 0
// and alpha -> 0 as d -> infinity, so every angle query inverts by bisection.

#include <cmath>
#include <functional>

namespace hypenny {

// Interior angle of an equilateral triangle with side d.
double alpha_of_d(double d);

// Vertex angle of a regular m-gon with side d (m >= 3).  alpha_m(3, d) == alpha_of_d(d).
double alpha_m_of_d(int m, double d);

// Inverse of alpha_of_d on (0, pi/3).
double d_of_alpha(double alpha);

// Side length at which exactly k equilateral triangles fit around a vertex:
// alpha(d_k) = 2*pi/k.  Requires k >= 7.
double d_k(int k);

// Side length at which one square and k-1 triangles fit around a vertex:
// alpha_4(d) + (k-1)*alpha(d) = 2*pi.  Requires k >= 6 (no solution at k = 5).
double dbar_k(int k);

// Area of the equilateral triangle with side d: pi - 3*alpha(d).
double triangle_area(double d);

struct AngleSet {
    double alpha;   // equilateral triangle angle
    double alpha4;  // square angle at the same side length
    double area3;   // triangle area
};

AngleSet angles_of_d(double d);

// Largest q such that one square angle plus q-2 triangle angles still fit
// around a vertex: q = 2 + floor((2*pi - alpha_4) / alpha).  Constant on each
// interval [dbar_k(q-1), dbar_k(q)); equals 6 for all 0 < d < dbar_k(6).
int fan_order(double d);

namespace detail {

// Root of a strictly decreasing f on [lo, hi] with f(lo) > 0 > f(hi).
template <class F>
double bisect_decreasing(F&& f, double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Root of a strictly increasing f on [lo, hi] with f(lo) < 0 < f(hi).
template <class F>
double bisect_increasing(F&& f, double lo, double hi) {
    return bisect_decreasing([&](double x) { return -f(x); }, lo, hi);
}

}  // namespace detail

}  // namespace hypenny
