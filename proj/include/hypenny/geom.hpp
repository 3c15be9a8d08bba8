#pragma once

// Hyperbolic plane, curvature -1, in the hyperboloid model.
//
// Points live on the upper sheet x0^2 - x1^2 - x2^2 = 1, x0 > 0, with the
// bilinear form <a,b> = a0*b0 - a1*b1 - a2*b2.  Geodesics are represented by
// their unit spacelike normal u (<u,u> = -1): the geodesic is the set of
// points p with <p,u> = 0, and |<p,u>| = sinh(distance to the geodesic).
// Isometries are 3x3 matrices preserving the form.

#include <vector>

namespace hypenny {

struct HPoint {
    double x0 = 1.0, x1 = 0.0, x2 = 0.0;
};

double minkowski(const HPoint& a, const HPoint& b);

// Rescale a timelike vector onto the unit sheet (x0 > 0).
HPoint normalized(HPoint p);

// Recompute x0 from (x1, x2); cheap drift control after matrix application.
HPoint snapped(HPoint p);

inline HPoint origin() { return {1.0, 0.0, 0.0}; }

// Point at hyperbolic distance r from the origin, direction theta.
HPoint point_from_polar(double r, double theta);

double hdist(const HPoint& p, const HPoint& q);

HPoint midpoint(const HPoint& p, const HPoint& q);

// Determinant of the 3x3 matrix with rows a, b, c.  Positive iff the triple
// winds counterclockwise (in the orientation inherited from the chart
// x0 = +sqrt(1+x1^2+x2^2)).
double or3(const HPoint& a, const HPoint& b, const HPoint& c);

// Interior angle at v of the geodesic wedge a-v-b, in [0, pi].
double angle_at(const HPoint& v, const HPoint& a, const HPoint& b);

struct Geodesic {
    double u0 = 0.0, u1 = 0.0, u2 = 1.0;  // default: the x-axis geodesic
};

Geodesic geodesic_through(const HPoint& p, const HPoint& q);

// <p,u>: zero on the geodesic, sign tells the side.
double signed_offset(const HPoint& p, const Geodesic& g);

double dist_to_geodesic(const HPoint& p, const Geodesic& g);

HPoint reflect_across(const Geodesic& g, const HPoint& p);

// <u,v> for the two unit normals.  |value| > 1 means disjoint with a common
// perpendicular (and acosh|value| is the distance between the lines),
// |value| < 1 means the geodesics cross.
double normals_inner(const Geodesic& g, const Geodesic& h);

bool ultraparallel(const Geodesic& g, const Geodesic& h);

struct Isometry {
    double m[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

    HPoint operator()(const HPoint& p) const;
    Geodesic operator()(const Geodesic& g) const;
    Isometry operator*(const Isometry& rhs) const;
    Isometry inverse() const;

    static Isometry identity();
    static Isometry rotation(double theta);          // about the origin
    static Isometry boost_x(double t);               // translation along the x-axis
    static Isometry move_origin_to(const HPoint& p);
    static Isometry rotation_about(const HPoint& p, double theta);
    static Isometry reflection(const Geodesic& g);
};

// Area of a simple geodesic polygon via the angle deficit; handles reflex
// vertices.  Vertex order may be either orientation.
double polygon_area(const std::vector<HPoint>& loop);

double polygon_perimeter(const std::vector<HPoint>& loop);

double circle_circumference(double r);
double circle_area(double r);

// Poincare disk chart, for rendering only.
struct DiskPt {
    double x = 0.0, y = 0.0;
};
DiskPt to_disk(const HPoint& p);

}  // namespace hypenny
