#include "hypenny/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "hypenny/errors.hpp"
#include "hypenny/hyptrig.hpp"

namespace hypenny {

namespace {

// All five upper bounds are functions of x = pi/alpha(d) (and, for the
// area-based ones, of the triangle area pi - 3*alpha).  x > 3 for every d > 0.
double pi_over_alpha(double d) { return std::acos(-1.0) / alpha_of_d(d); }

}  // namespace

double upper_bound_all(double d) {
    double x = pi_over_alpha(d);
    return x - std::sqrt((x - 1.0) * (x - 3.0));
}

double upper_bound_semiregular(double d) {
    double x = pi_over_alpha(d);
    return x - 1.0 / 8.0 - std::sqrt(x * x - 17.0 / 4.0 * x + 241.0 / 64.0);
}

double upper_bound_semiregular_area(double d) {
    double area = triangle_area(d);
    return 2.0 + 3.0 * (d - area) / (4.0 * (d + area));
}

double upper_bound_generic(double d) {
    double x = pi_over_alpha(d);
    return x - 1.0 / 6.0 - std::sqrt(x * x - 13.0 / 3.0 * x + 145.0 / 36.0);
}

double upper_bound_generic_area(double d) {
    double area = triangle_area(d);
    return 8.0 / 3.0 - 4.0 * area / (3.0 * (d + area));
}

double lower_bound_all(double d) {
    int q = fan_order(d);
    return 2.0 + 1.0 / (4.0 * q - 14.0);
}

DistanceClass classify_distance(double d, double tol) {
    require(d > 0.0, "classify_distance: d must be positive");
    require(tol >= 0.0, "classify_distance: tol must be nonnegative");
    const double two_pi = 2.0 * std::acos(-1.0);
    AngleSet a = angles_of_d(d);

    DistanceClass cls;
    long k = std::lround(two_pi / a.alpha);
    if (k >= 7 && std::abs(d - d_k(static_cast<int>(k))) <= tol) {
        cls.triangular = true;
        cls.k = static_cast<int>(k);
    }
    long kbar = std::lround((two_pi - a.alpha4) / a.alpha) + 1;
    if (kbar >= 6 && std::abs(d - dbar_k(static_cast<int>(kbar))) <= tol) {
        cls.semiregular = true;
        cls.kbar = static_cast<int>(kbar);
    }
    return cls;
}

double upper_envelope(double d, double tol) {
    DistanceClass cls = classify_distance(d, tol);
    double best = upper_bound_all(d);
    if (cls.semiregular) {
        best = std::min(best, upper_bound_semiregular(d));
        best = std::min(best, upper_bound_semiregular_area(d));
    }
    if (!cls.triangular && !cls.semiregular) {
        best = std::min(best, upper_bound_generic(d));
        best = std::min(best, upper_bound_generic_area(d));
    }
    return best;
}

double generic_bounds_crossing() {
    auto gap = [](double d) { return upper_bound_generic(d) - upper_bound_generic_area(d); };
    check_cert(gap(0.8) > 0.0 && gap(1.3) < 0.0, "generic_bounds_crossing: bracket lost");
    return detail::bisect_decreasing(gap, 0.8, 1.3);
}

double order7_dominance_threshold() {
    const double target = upper_bound_all(d_k(7));
    auto gap = [=](double d) { return upper_bound_generic_area(d) - target; };
    check_cert(gap(0.1) > 0.0 && gap(3.0) < 0.0, "order7_dominance_threshold: bracket lost");
    return detail::bisect_decreasing(gap, 0.1, 3.0);
}

}  // namespace hypenny
