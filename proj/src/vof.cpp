#include "hydro/vof.hpp"

#include "hydro/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hydro {

Vec2 youngs_normal(const Field<double>& k1, int i, int j, double dx, double dy) {
    auto col = [&](int ii) {
        return k1(ii, j - 1) + 2.0 * k1(ii, j) + k1(ii, j + 1);
    };
    auto row = [&](int jj) {
        return k1(i - 1, jj) + 2.0 * k1(i, jj) + k1(i + 1, jj);
    };
    const double gx = (col(i + 1) - col(i - 1)) / (8.0 * dx);
    const double gy = (row(j + 1) - row(j - 1)) / (8.0 * dy);
    const double g = std::sqrt(gx * gx + gy * gy);
    if (g < 1e-300) throw IsolatedMixedCellError("isolated mixed cell: zero fraction gradient", i, j);
    return {gx / g, gy / g};
}

namespace {

// Fraction below offset t from the minimal-s corner, t in [0, (A+B)/2],
// with A <= B the projected rectangle extents along the normal.
double corner_fraction(double A, double B, double t) {
    if (t <= 0.0) return 0.0;
    if (A > 0.0 && t < A) return t * t / (2.0 * A * B);
    return (t - 0.5 * A) / B;
}

} // namespace

double clipped_fraction(double w, double h, const Vec2& n, double d) {
    double A = std::abs(n.x) * w;
    double B = std::abs(n.y) * h;
    if (A > B) std::swap(A, B);
    const double S = 0.5 * (A + B);
    if (d <= -S) return 0.0;
    if (d >= S) return 1.0;
    if (d <= 0.0) return corner_fraction(A, B, d + S);
    return 1.0 - corner_fraction(A, B, S - d);
}

InterfaceLine place_interface(double frac, const Vec2& n, const Rect& proxy) {
    const double w = proxy.width(), h = proxy.height();
    double A = std::abs(n.x) * w;
    double B = std::abs(n.y) * h;
    if (A > B) std::swap(A, B);
    const double S = 0.5 * (A + B);

    const bool flip = frac > 0.5;
    const double kk = flip ? 1.0 - frac : frac;
    double t;
    if (A > 0.0 && kk <= A / (2.0 * B))
        t = std::sqrt(2.0 * A * B * kk);
    else
        t = kk * B + 0.5 * A;
    double d = t - S;
    if (flip) d = -d;

    if (std::abs(clipped_fraction(w, h, n, d) - frac) > 1e-13) {
        double lo = -S, hi = S;
        for (int it = 0; it < 200 && hi - lo > 1e-13 * (2.0 * S); ++it) {
            const double mid = 0.5 * (lo + hi);
            (clipped_fraction(w, h, n, mid) < frac ? lo : hi) = mid;
        }
        d = 0.5 * (lo + hi);
    }
    return {n, d};
}

} // namespace hydro
