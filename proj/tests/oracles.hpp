#pragma once

// Test-only geometry oracles, kept independent of the library's analytic
// kernels: polygon areas by the shoelace formula and half-plane clipping by
// Sutherland-Hodgman.

#include "hydro/vec2.hpp"

#include <vector>

namespace oracles {

using hydro::Vec2;

inline double shoelace_area(const std::vector<Vec2>& poly) {
    double s = 0.0;
    const size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    return 0.5 * s;
}

/// Clip a polygon against the half-plane n . x <= c.
inline std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& n, double c) {
    std::vector<Vec2> out;
    const size_t sz = poly.size();
    for (size_t i = 0; i < sz; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % sz];
        const double da = dot(n, a) - c;
        const double db = dot(n, b) - c;
        if (da <= 0.0) out.push_back(a);
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
            const double t = da / (da - db);
            out.push_back(a + t * (b - a));
        }
    }
    return out;
}

inline std::vector<Vec2> rect_poly(double x0, double y0, double x1, double y1) {
    return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
}

/// Area of a rectangle on the n . (x - centre) <= d side of a line.
inline double clipped_rect_area(double x0, double y0, double x1, double y1, const Vec2& n,
                                double d) {
    const Vec2 c{0.5 * (x0 + x1), 0.5 * (y0 + y1)};
    const auto poly = clip_halfplane(rect_poly(x0, y0, x1, y1), n, dot(n, c) + d);
    if (poly.size() < 3) return 0.0;
    return shoelace_area(poly);
}

} // namespace oracles
