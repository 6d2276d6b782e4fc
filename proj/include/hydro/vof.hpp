#pragma once

#include "hydro/field.hpp"
#include "hydro/vec2.hpp"

namespace hydro {

/// Sharp interface segment in one mixed cell: the line
///   { x : n . (x - ref) = d }
/// clipped to the cell proxy rectangle, with ref the rectangle centre.
/// n is oriented from material 0 into material 1, so material 0 occupies
/// the n.(x-ref) <= d side.
struct InterfaceLine {
    Vec2 normal;
    double d = 0.0;
};

/// Youngs 9-point interface normal: normalized discrete gradient of the
/// material-1 volume fraction (1-2-1 weighted columns/rows).
/// Throws IsolatedMixedCellError when the stencil gradient vanishes.
Vec2 youngs_normal(const Field<double>& k1, int i, int j, double dx, double dy);

/// Area fraction of a w-by-h rectangle lying on the n.(x-c) <= d side of a
/// line through offset d from the rectangle centre c. Piecewise analytic
/// (triangle / trapezoid cases), exact for any unit n.
double clipped_fraction(double w, double h, const Vec2& n, double d);

/// Invert clipped_fraction in d: place the interface so the material-0 side
/// holds the fraction `frac` of the rectangle area. Analytic inversion with a
/// bisection fallback if the round-trip misses 1e-13.
InterfaceLine place_interface(double frac, const Vec2& n, const Rect& proxy);

} // namespace hydro
