#pragma once
// Deterministic SVG emitters for two kinds of figures:
//
//   * SvgDisk  — the conformal unit-disk picture: boundary circle, vertex
//     dots, geodesic edges drawn as circular arcs orthogonal to the boundary,
//     and Euclidean circles (pennies, horocycles).
//   * SvgChart — a minimal line chart: polylines, dots, horizontal reference
//     lines and step functions over a fixed data rectangle.
//
// Both map their scene onto a fixed 1000x1000 viewBox and format every
// coordinate with the same fixed precision, so identical inputs produce
// byte-identical documents.

#include <string>
#include <vector>

#include "hypenny/geom.hpp"

namespace hypenny {

// Euclidean circle in unit-disk coordinates (points come from geom's to_disk).
struct DiskCircle {
    double cx = 0.0;
    double cy = 0.0;
    double r = 0.0;
};

// The hyperbolic circle of radius r about a center at hyperbolic distance rho
// from the origin maps to a Euclidean circle: with m = tanh(rho/2) and
// t = tanh(r/2), the image has center m (1 - t^2) / (1 - m^2 t^2) along the
// same ray and radius t (1 - m^2) / (1 - m^2 t^2).
DiskCircle disk_circle(const HPoint& center, double radius);

// Geodesic segment between two disk points: either a straight chord through
// the origin or an arc of the circle through both points orthogonal to the
// unit circle.  `sweep` is the SVG sweep flag that keeps the arc on the side
// bulging toward the origin.
struct DiskArc {
    bool is_line = false;
    double cx = 0.0;  // arc-circle center and radius (unset for lines)
    double cy = 0.0;
    double r = 0.0;
    int sweep = 0;
};
DiskArc geodesic_arc(DiskPt a, DiskPt b);

class SvgDisk {
  public:
    SvgDisk();  // draws the unit-circle boundary

    void add_point(DiskPt p, double px_radius = 2.5,
                   const std::string& fill = "#1a1a1a");
    void add_segment(DiskPt a, DiskPt b, const std::string& stroke = "#2060b0",
                     double px_width = 1.2);
    void add_circle(const DiskCircle& c, const std::string& stroke = "#767676",
                    double px_width = 1.0);

    std::string str() const;  // complete document

  private:
    std::string body_;
};

class SvgChart {
  public:
    // Data rectangle mapped onto the plotting area (x right, y up).
    SvgChart(double x_min, double x_max, double y_min, double y_max);

    // Polyline through the samples; splits at NaN gaps.
    void add_polyline(const std::vector<std::pair<double, double>>& pts,
                      const std::string& stroke, double px_width = 1.5);
    // Staircase through the samples: horizontal to the next x, then vertical.
    void add_steps(const std::vector<std::pair<double, double>>& pts,
                   const std::string& stroke, double px_width = 1.5);
    void add_hline(double y, const std::string& stroke, double px_width = 1.0);
    void add_dot(double x, double y, const std::string& fill, double px_radius = 3.5);

    std::string str() const;

  private:
    double sx(double x) const;
    double sy(double y) const;
    double x0_, x1_, y0_, y1_;
    std::string body_;
};

}  // namespace hypenny
