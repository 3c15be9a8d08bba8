#include "hypenny/svg.hpp"

#include <cmath>
#include <cstdio>

#include "hypenny/errors.hpp"

namespace hypenny {

namespace {

constexpr double kView = 1000.0;
constexpr double kDiskCx = 500.0;
constexpr double kDiskCy = 500.0;
constexpr double kDiskR = 495.0;

// Fixed two-decimal pixel formatting keeps documents byte-identical.
std::string fmt(double v) {
    if (!(std::abs(v) < 1e7)) v = (v > 0 ? 1e7 : -1e7);  // clamp non-finite/huge
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    std::string s(buf);
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string document(const std::string& body) {
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<!-- generated by hypenny -->\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" "
           "width=\"1000\" height=\"1000\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
    out += body;
    out += "</svg>\n";
    return out;
}

}  // namespace


DiskCircle disk_circle(const HPoint& center, double radius) {
    require(radius > 0.0, "disk_circle: radius must be positive");
    const double t = std::tanh(radius / 2.0);
    // tanh(rho/2) for cosh(rho) = x0, with the direction read off the point.
    const double m = std::sqrt(std::max(0.0, (center.x0 - 1.0) / (center.x0 + 1.0)));
    const double denom = 1.0 - m * m * t * t;
    const double off = m * (1.0 - t * t) / denom;
    const double er = t * (1.0 - m * m) / denom;
    double ux = 0.0, uy = 0.0;
    const double norm = std::hypot(center.x1, center.x2);
    if (norm > 0.0) {
        ux = center.x1 / norm;
        uy = center.x2 / norm;
    }
    return DiskCircle{off * ux, off * uy, er};
}

DiskArc geodesic_arc(DiskPt a, DiskPt b) {
    DiskArc arc;
    const double det = a.x * b.y - a.y * b.x;
    const double scale = 1.0 + std::abs(a.x) + std::abs(a.y) + std::abs(b.x) + std::abs(b.y);
    if (std::abs(det) < 1e-9 * scale) {  // chord through the origin
        arc.is_line = true;
        return arc;
    }
    // Center w of the circle through a and b orthogonal to the unit circle:
    // w·a = (|a|^2 + 1)/2 and w·b = (|b|^2 + 1)/2.
    const double ra = (a.x * a.x + a.y * a.y + 1.0) / 2.0;
    const double rb = (b.x * b.x + b.y * b.y + 1.0) / 2.0;
    arc.cx = (ra * b.y - rb * a.y) / det;
    arc.cy = (a.x * rb - b.x * ra) / det;
    arc.r = std::sqrt(std::max(0.0, arc.cx * arc.cx + arc.cy * arc.cy - 1.0));
    if (arc.r < 1e-7) {  // numerically a straight chord after all
        arc.is_line = true;
        return arc;
    }
    // Anticlockwise travel in disk coordinates appears clockwise after the
    // vertical flip into pixel coordinates, which SVG calls sweep = 1.
    const double cross = (a.x - arc.cx) * (b.y - arc.cy) - (a.y - arc.cy) * (b.x - arc.cx);
    arc.sweep = cross > 0.0 ? 1 : 0;
    return arc;
}

SvgDisk::SvgDisk() {
    body_ += "<circle cx=\"" + fmt(kDiskCx) + "\" cy=\"" + fmt(kDiskCy) + "\" r=\"" +
             fmt(kDiskR) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.50\"/>\n";
}

void SvgDisk::add_point(DiskPt p, double px_radius, const std::string& fill) {
    body_ += "<circle cx=\"" + fmt(kDiskCx + kDiskR * p.x) + "\" cy=\"" +
             fmt(kDiskCy - kDiskR * p.y) + "\" r=\"" + fmt(px_radius) + "\" fill=\"" + fill +
             "\"/>\n";
}

void SvgDisk::add_segment(DiskPt a, DiskPt b, const std::string& stroke,
                          double px_width) {
    const DiskArc arc = geodesic_arc(a, b);
    const std::string xa = fmt(kDiskCx + kDiskR * a.x), ya = fmt(kDiskCy - kDiskR * a.y);
    const std::string xb = fmt(kDiskCx + kDiskR * b.x), yb = fmt(kDiskCy - kDiskR * b.y);
    std::string d;
    if (arc.is_line) {
        d = "M " + xa + " " + ya + " L " + xb + " " + yb;
    } else {
        const std::string r = fmt(kDiskR * arc.r);
        d = "M " + xa + " " + ya + " A " + r + " " + r + " 0 0 " +
            (arc.sweep ? "1" : "0") + " " + xb + " " + yb;
    }
    body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + fmt(px_width) + "\"/>\n";
}

void SvgDisk::add_circle(const DiskCircle& c, const std::string& stroke, double px_width) {
    body_ += "<circle cx=\"" + fmt(kDiskCx + kDiskR * c.cx) + "\" cy=\"" +
             fmt(kDiskCy - kDiskR * c.cy) + "\" r=\"" + fmt(kDiskR * c.r) +
             "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + fmt(px_width) +
             "\"/>\n";
}

std::string SvgDisk::str() const { return document(body_); }

namespace {
constexpr double kPlotX = 70.0, kPlotY = 30.0, kPlotW = 900.0, kPlotH = 900.0;
}

SvgChart::SvgChart(double x_min, double x_max, double y_min, double y_max)
    : x0_(x_min), x1_(x_max), y0_(y_min), y1_(y_max) {
    require(x_max > x_min && y_max > y_min, "SvgChart: empty data rectangle");
    body_ += "<rect x=\"" + fmt(kPlotX) + "\" y=\"" + fmt(kPlotY) + "\" width=\"" +
             fmt(kPlotW) + "\" height=\"" + fmt(kPlotH) +
             "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.00\"/>\n";
}

double SvgChart::sx(double x) const { return kPlotX + (x - x0_) / (x1_ - x0_) * kPlotW; }
double SvgChart::sy(double y) const { return kPlotY + kPlotH - (y - y0_) / (y1_ - y0_) * kPlotH; }

void SvgChart::add_polyline(const std::vector<std::pair<double, double>>& pts,
                            const std::string& stroke, double px_width) {
    std::string d;
    bool open = false;
    for (const auto& [x, y] : pts) {
        if (!std::isfinite(x) || !std::isfinite(y)) {
            open = false;
            continue;
        }
        d += (open ? " L " : (d.empty() ? "M " : " M ")) + fmt(sx(x)) + " " + fmt(sy(y));
        open = true;
    }
    if (d.empty()) return;
    body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + fmt(px_width) + "\"/>\n";
}

void SvgChart::add_steps(const std::vector<std::pair<double, double>>& pts,
                         const std::string& stroke, double px_width) {
    std::string d;
    double prev_y = 0.0;
    bool open = false;
    for (const auto& [x, y] : pts) {
        if (!std::isfinite(x) || !std::isfinite(y)) {
            open = false;
            continue;
        }
        if (open) d += " L " + fmt(sx(x)) + " " + fmt(sy(prev_y));
        d += (open ? " L " : (d.empty() ? "M " : " M ")) + fmt(sx(x)) + " " + fmt(sy(y));
        prev_y = y;
        open = true;
    }
    if (d.empty()) return;
    body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke +
             "\" stroke-width=\"" + fmt(px_width) + "\"/>\n";
}

void SvgChart::add_hline(double y, const std::string& stroke, double px_width) {
    body_ += "<line x1=\"" + fmt(kPlotX) + "\" y1=\"" + fmt(sy(y)) + "\" x2=\"" +
             fmt(kPlotX + kPlotW) + "\" y2=\"" + fmt(sy(y)) + "\" stroke=\"" + stroke +
             "\" stroke-width=\"" + fmt(px_width) + "\"/>\n";
}

void SvgChart::add_dot(double x, double y, const std::string& fill, double px_radius) {
    body_ += "<circle cx=\"" + fmt(sx(x)) + "\" cy=\"" + fmt(sy(y)) + "\" r=\"" +
             fmt(px_radius) + "\" fill=\"" + fill + "\"/>\n";
}

std::string SvgChart::str() const { return document(body_); }

}  // namespace hypenny
