#include "hypenny/geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hypenny/errors.hpp"

namespace hypenny {

using std::numbers::pi;

double minkowski(const HPoint& a, const HPoint& b) {
    return a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2;
}

HPoint normalized(HPoint p) {
    double s = minkowski(p, p);
    require(s > 0.0 && p.x0 > 0.0, "normalized: vector is not future-timelike");
    double inv = 1.0 / std::sqrt(s);
    return {p.x0 * inv, p.x1 * inv, p.x2 * inv};
}

HPoint snapped(HPoint p) {
    p.x0 = std::sqrt(1.0 + p.x1 * p.x1 + p.x2 * p.x2);
    return p;
}

HPoint point_from_polar(double r, double theta) {
    require(r >= 0.0, "point_from_polar: radius must be nonnegative");
    double sh = std::sinh(r);
    return {std::cosh(r), sh * std::cos(theta), sh * std::sin(theta)};
}

double hdist(const HPoint& p, const HPoint& q) {
    return std::acosh(std::max(1.0, minkowski(p, q)));
}

HPoint midpoint(const HPoint& p, const HPoint& q) {
    return normalized({p.x0 + q.x0, p.x1 + q.x1, p.x2 + q.x2});
}

double or3(const HPoint& a, const HPoint& b, const HPoint& c) {
    return a.x0 * (b.x1 * c.x2 - b.x2 * c.x1) - a.x1 * (b.x0 * c.x2 - b.x2 * c.x0) +
           a.x2 * (b.x0 * c.x1 - b.x1 * c.x0);
}

namespace {

struct Tangent {
    double t0, t1, t2;
};

// Component of a orthogonal to v; a tangent (spacelike) vector at v.
Tangent project_to_tangent(const HPoint& v, const HPoint& a) {
    double c = minkowski(v, a);
    return {a.x0 - c * v.x0, a.x1 - c * v.x1, a.x2 - c * v.x2};
}

double tangent_inner(const Tangent& a, const Tangent& b) {
    // Riemannian inner product: minus the ambient form on spacelike vectors.
    return -(a.t0 * b.t0 - a.t1 * b.t1 - a.t2 * b.t2);
}

}  // namespace

double angle_at(const HPoint& v, const HPoint& a, const HPoint& b) {
    Tangent wa = project_to_tangent(v, a);
    Tangent wb = project_to_tangent(v, b);
    double na = tangent_inner(wa, wa);
    double nb = tangent_inner(wb, wb);
    require(na > 0.0 && nb > 0.0, "angle_at: rays need endpoints distinct from the vertex");
    // The volume form is multilinear, so or3(v, a, b) == or3(v, wa, wb),
    // which is sqrt(na*nb) times the sine of the angle; pairing it with the
    // unnormalized cosine in atan2 keeps full precision at straight angles,
    // where an acos of the normalized inner product loses half the digits.
    double s = std::abs(or3(v, a, b));
    double c = tangent_inner(wa, wb);
    return std::atan2(s, c);
}

Geodesic geodesic_through(const HPoint& p, const HPoint& q) {
    // Euclidean cross product flipped by J = diag(1,-1,-1) gives a vector
    // form-orthogonal to both points.
    double c0 = p.x1 * q.x2 - p.x2 * q.x1;
    double c1 = p.x2 * q.x0 - p.x0 * q.x2;
    double c2 = p.x0 * q.x1 - p.x1 * q.x0;
    Geodesic g{c0, -c1, -c2};
    double s = g.u1 * g.u1 + g.u2 * g.u2 - g.u0 * g.u0;
    require(s > 1e-28, "geodesic_through: points too close to span a line");
    double inv = 1.0 / std::sqrt(s);
    return {g.u0 * inv, g.u1 * inv, g.u2 * inv};
}

double signed_offset(const HPoint& p, const Geodesic& g) {
    return p.x0 * g.u0 - p.x1 * g.u1 - p.x2 * g.u2;
}

double dist_to_geodesic(const HPoint& p, const Geodesic& g) {
    return std::asinh(std::abs(signed_offset(p, g)));
}

HPoint reflect_across(const Geodesic& g, const HPoint& p) {
    double c = 2.0 * signed_offset(p, g);
    return snapped({p.x0 + c * g.u0, p.x1 + c * g.u1, p.x2 + c * g.u2});
}

double normals_inner(const Geodesic& g, const Geodesic& h) {
    return g.u0 * h.u0 - g.u1 * h.u1 - g.u2 * h.u2;
}

bool ultraparallel(const Geodesic& g, const Geodesic& h) {
    return std::abs(normals_inner(g, h)) > 1.0;
}

HPoint Isometry::operator()(const HPoint& p) const {
    double v[3] = {p.x0, p.x1, p.x2};
    double w[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w[i] += m[i][j] * v[j];
    return snapped({w[0], w[1], w[2]});
}

Geodesic Isometry::operator()(const Geodesic& g) const {
    double v[3] = {g.u0, g.u1, g.u2};
    double w[3] = {0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w[i] += m[i][j] * v[j];
    double s = w[1] * w[1] + w[2] * w[2] - w[0] * w[0];
    double inv = 1.0 / std::sqrt(s);
    return {w[0] * inv, w[1] * inv, w[2] * inv};
}

Isometry Isometry::operator*(const Isometry& rhs) const {
    Isometry out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += m[i][k] * rhs.m[k][j];
            out.m[i][j] = s;
        }
    return out;
}

Isometry Isometry::inverse() const {
    // For form-preserving M the inverse is J * M^T * J, J = diag(1,-1,-1).
    Isometry out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double sign = ((i == 0) == (j == 0)) ? 1.0 : -1.0;
            out.m[i][j] = sign * m[j][i];
        }
    return out;
}

Isometry Isometry::identity() { return {}; }

Isometry Isometry::rotation(double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    Isometry r;
    r.m[1][1] = c;
    r.m[1][2] = -s;
    r.m[2][1] = s;
    r.m[2][2] = c;
    return r;
}

Isometry Isometry::boost_x(double t) {
    double ch = std::cosh(t), sh = std::sinh(t);
    Isometry b;
    b.m[0][0] = ch;
    b.m[0][1] = sh;
    b.m[1][0] = sh;
    b.m[1][1] = ch;
    return b;
}

Isometry Isometry::move_origin_to(const HPoint& p) {
    double phi = std::atan2(p.x2, p.x1);
    double r = std::acosh(std::max(1.0, p.x0));
    return rotation(phi) * boost_x(r) * rotation(-phi);
}

Isometry Isometry::rotation_about(const HPoint& p, double theta) {
    Isometry t = move_origin_to(p);
    return t * rotation(theta) * t.inverse();
}

Isometry Isometry::reflection(const Geodesic& g) {
    double u[3] = {g.u0, g.u1, g.u2};
    double ju[3] = {g.u0, -g.u1, -g.u2};
    Isometry r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.m[i][j] = (i == j ? 1.0 : 0.0) + 2.0 * u[i] * ju[j];
    return r;
}

namespace {

double area_assuming_ccw(const std::vector<HPoint>& loop) {
    int n = static_cast<int>(loop.size());
    double angle_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const HPoint& prev = loop[(i + n - 1) % n];
        const HPoint& v = loop[i];
        const HPoint& next = loop[(i + 1) % n];
        double ang = angle_at(v, prev, next);
        if (or3(prev, v, next) < 0.0) ang = 2.0 * pi - ang;  // reflex vertex
        angle_sum += ang;
    }
    return (n - 2) * pi - angle_sum;
}

}  // namespace

double polygon_area(const std::vector<HPoint>& loop) {
    require(loop.size() >= 3, "polygon_area: need at least 3 vertices");
    double a = area_assuming_ccw(loop);
    if (a < 0.0) {
        std::vector<HPoint> rev(loop.rbegin(), loop.rend());
        a = area_assuming_ccw(rev);
    }
    check_cert(a >= 0.0, "polygon_area: loop is not a simple polygon");
    return a;
}

double polygon_perimeter(const std::vector<HPoint>& loop) {
    require(loop.size() >= 2, "polygon_perimeter: need at least 2 vertices");
    double per = 0.0;
    for (size_t i = 0; i < loop.size(); ++i) per += hdist(loop[i], loop[(i + 1) % loop.size()]);
    return per;
}

double circle_circumference(double r) {
    require(r >= 0.0, "circle_circumference: radius must be nonnegative");
    return 2.0 * pi * std::sinh(r);
}

double circle_area(double r) {
    require(r >= 0.0, "circle_area: radius must be nonnegative");
    double sh = std::sinh(0.5 * r);
    return 4.0 * pi * sh * sh;
}

DiskPt to_disk(const HPoint& p) {
    return {p.x1 / (1.0 + p.x0), p.x2 / (1.0 + p.x0)};
}

}  // namespace hypenny
