#include "hypenny/hyptrig.hpp"

#include <numbers>

#include "hypenny/errors.hpp"

namespace hypenny {

using std::numbers::pi;

double alpha_of_d(double d) {
    require(d > 0.0, "alpha_of_d: side length must be positive");
    // Half-angle form: sin(alpha/2) = 1 / (2*cosh(d/2)).  Stable for all d;
    // the equivalent cos(alpha) = tanh(d/2)/tanh(d) loses digits for small d.
    return 2.0 * std::asin(1.0 / (2.0 * std::cosh(0.5 * d)));
}

double alpha_m_of_d(int m, double d) {
    require(m >= 3, "alpha_m_of_d: need at least 3 sides");
    require(d > 0.0, "alpha_m_of_d: side length must be positive");
    return 2.0 * std::asin(std::cos(pi / m) / std::cosh(0.5 * d));
}

double d_of_alpha(double alpha) {
    require(alpha > 0.0 && alpha < pi / 3.0, "d_of_alpha: angle must lie in (0, pi/3)");
    double hi = 32.0;
    while (alpha_of_d(hi) > alpha) hi *= 2.0;
    return detail::bisect_decreasing([&](double d) { return alpha_of_d(d) - alpha; }, 1e-9, hi);
}

double d_k(int k) {
    require(k >= 7, "d_k: fewer than 7 triangles cannot share a vertex with side > 0");
    return d_of_alpha(2.0 * pi / k);
}

double dbar_k(int k) {
    require(k >= 6, "dbar_k: no side length fits one square and fewer than 5 triangles");
    auto gap = [&](double d) { return alpha_m_of_d(4, d) + (k - 1) * alpha_of_d(d) - 2.0 * pi; };
    double hi = 32.0;
    while (gap(hi) > 0.0) hi *= 2.0;
    return detail::bisect_decreasing(gap, 1e-9, hi);
}

double triangle_area(double d) { return pi - 3.0 * alpha_of_d(d); }

AngleSet angles_of_d(double d) {
    double a = alpha_of_d(d);
    return {a, alpha_m_of_d(4, d), pi - 3.0 * a};
}

int fan_order(double d) {
    require(d > 0.0, "fan_order: side length must be positive");
    AngleSet a = angles_of_d(d);
    return 2 + static_cast<int>(std::floor((2.0 * pi - a.alpha4) / a.alpha));
}

}  // namespace hypenny
