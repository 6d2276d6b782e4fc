#pragma once

#include "hydro/vec2.hpp"

namespace hydro {

enum class CornerScheme { Upwind, AvgMin, LinearXY, LinearDiag, Multid };

struct ReconConfig {
    int face_order = 2;
    CornerScheme corner = CornerScheme::LinearDiag; // consumed by the corner-flux engine only
    bool interface_degrade = true;                  // drop to order 1 near mixed cells
};

/// Van Leer limiter phi(r) = (r + |r|) / (1 + r); zero for r <= 0.
double van_leer(double r);

/// Limited 1D gradient 0.5*(phi(r) d+ + phi(1/r) d-) over Lagrangian centroid
/// coordinates (xm < xc < xp). Zero at extrema; throws on zero spacing.
double limited_gradient_1d(double am, double ac, double ap, double xm, double xc, double xp);

/// Donor-cell values and Lagrangian centroid coordinates along one axis.
struct Stencil1D {
    double a[3];  // a_{c-1}, a_c, a_{c+1}
    double x[3];  // matching centroid coordinates
};

/// Reconstructed value at a face. Order 1 returns the donor mean; order 2
/// adds the limited-slope offset 0.5*grad*(sgn(dVol)*lag_width - dt*u_face).
double face_value(int order, const Stencil1D& donor, double sgn_dvol, double lag_width,
                  double u_face_dt);

/// 3x3 stencil centred on the donor cell: values and Lagrangian centroids,
/// indexed [di+1][dj+1].
struct Stencil3x3 {
    double a[3][3];
    Vec2 xl[3][3];
};

/// Kinematics and geometry a corner reconstruction may need. dxp/dyp is the
/// corner node displacement over the step; (sx, sy) are its signs, which
/// select the donor quadrant (handled by the caller when centring the
/// stencil) and the diagonal branch here.
struct CornerKin {
    double dxp = 0.0, dyp = 0.0;
    double lag_wx = 0.0, lag_wy = 0.0;  // donor Lagrangian cell widths
    double sgn_fx = 0.0, u_fx_dt = 0.0; // upstream X-face flux sign / dt*u.ex
    double sgn_fy = 0.0, u_fy_dt = 0.0; // upstream Y-face flux sign / dt*u.ey
    Vec2 eval_rel;                      // flux-box centroid minus donor Lagrangian centroid
    double dx = 1.0, dy = 1.0;          // Eulerian spacings
};

double corner_value(CornerScheme scheme, const Stencil3x3& st, const CornerKin& kin);

/// Plane a(x) = a0 + grad . (x - center) fitted to the 9 stencil means by
/// least squares; grad is the norm-limited gradient, grad_raw the plain
/// least-squares solution.
struct PlaneRecon {
    double a0 = 0.0;
    Vec2 center;
    Vec2 grad_raw;
    Vec2 grad;
};

PlaneRecon multid_plane(const Stencil3x3& st, double dx, double dy);

inline double plane_eval(const PlaneRecon& pl, const Vec2& x) {
    return pl.a0 + dot(pl.grad, x - pl.center);
}

} // namespace hydro
