#include "hydro/reconstruct.hpp"

#include "hydro/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hydro {

double van_leer(double r) {
    if (!(r > 0.0)) return 0.0;       // covers r <= 0 and the r = -1 pole
    if (r > 1e300) return 2.0;
    return (r + std::abs(r)) / (1.0 + r);
}

double limited_gradient_1d(double am, double ac, double ap, double xm, double xc, double xp) {
    const double hm = xc - xm, hp = xp - xc;
    if (hm <= 0.0 || hp <= 0.0) throw SimError("non-increasing centroid coordinates");
    const double dm = (ac - am) / hm;
    const double dp = (ap - ac) / hp;
    if (dm == 0.0 || dp == 0.0 || (dm > 0.0) != (dp > 0.0)) return 0.0;
    const double r = dm / dp;
    return 0.5 * (van_leer(r) * dp + van_leer(1.0 / r) * dm);
}

double face_value(int order, const Stencil1D& d, double sgn_dvol, double lag_width,
                  double u_face_dt) {
    if (order <= 1) return d.a[1];
    const double g = limited_gradient_1d(d.a[0], d.a[1], d.a[2], d.x[0], d.x[1], d.x[2]);
    return d.a[1] + 0.5 * g * (sgn_dvol * lag_width - u_face_dt);
}

namespace {

int sgn(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Limited gradient along a unit direction dir from three stencil entries.
double diag_gradient(const Stencil3x3& st, int im, int jm, int ip, int jp, const Vec2& dir) {
    const double sc = dot(st.xl[1][1], dir);
    return limited_gradient_1d(st.a[im][jm], st.a[1][1], st.a[ip][jp],
                               dot(st.xl[im][jm], dir), sc, dot(st.xl[ip][jp], dir));
}

// Householder QR solve of the (up to) 8x2 least-squares system X g = b.
Vec2 qr_solve_2col(double X[8][2], double b[8], int m) {
    for (int col = 0; col < 2; ++col) {
        double nrm = 0.0;
        for (int r = col; r < m; ++r) nrm += X[r][col] * X[r][col];
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300) return {0.0, 0.0}; // rank-deficient geometry
        const double alpha = X[col][col] > 0.0 ? -nrm : nrm;
        double v[8];
        v[col] = X[col][col] - alpha;
        for (int r = col + 1; r < m; ++r) v[r] = X[r][col];
        double vtv = 0.0;
        for (int r = col; r < m; ++r) vtv += v[r] * v[r];
        if (vtv > 0.0) {
            for (int c = col; c < 2; ++c) {
                double s = 0.0;
                for (int r = col; r < m; ++r) s += v[r] * X[r][c];
                s *= 2.0 / vtv;
                for (int r = col; r < m; ++r) X[r][c] -= s * v[r];
            }
            double s = 0.0;
            for (int r = col; r < m; ++r) s += v[r] * b[r];
            s *= 2.0 / vtv;
            for (int r = col; r < m; ++r) b[r] -= s * v[r];
        }
    }
    const double g2 = b[1] / X[1][1];
    const double g1 = (b[0] - X[0][1] * g2) / X[0][0];
    return {g1, g2};
}

} // namespace

PlaneRecon multid_plane(const Stencil3x3& st, double dx, double dy) {
    PlaneRecon pl;
    pl.a0 = st.a[1][1];
    pl.center = st.xl[1][1];

    double X[8][2];
    double b[8];
    int m = 0;
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
            if (p == 1 && q == 1) continue;
            X[m][0] = st.xl[p][q].x - pl.center.x;
            X[m][1] = st.xl[p][q].y - pl.center.y;
            b[m] = st.a[p][q] - pl.a0;
            ++m;
        }
    pl.grad_raw = qr_solve_2col(X, b, m);

    const double gnorm = norm(pl.grad_raw);
    if (gnorm < 1e-300) {
        pl.grad = {0.0, 0.0};
        return pl;
    }
    const double diag = std::sqrt(dx * dx + dy * dy);
    const Vec2 v{dx / diag, dy / diag};
    const Vec2 vp{dx / diag, -dy / diag};
    const double gx = limited_gradient_1d(st.a[0][1], st.a[1][1], st.a[2][1], st.xl[0][1].x,
                                          st.xl[1][1].x, st.xl[2][1].x);
    const double gy = limited_gradient_1d(st.a[1][0], st.a[1][1], st.a[1][2], st.xl[1][0].y,
                                          st.xl[1][1].y, st.xl[1][2].y);
    const double gv = diag_gradient(st, 0, 0, 2, 2, v);
    const double gvp = diag_gradient(st, 0, 2, 2, 0, vp);
    const double phi =
        std::min(std::min(std::abs(gx), std::abs(gy)), std::min(std::abs(gv), std::abs(gvp))) /
        gnorm;
    pl.grad = phi * pl.grad_raw;
    return pl;
}

double corner_value(CornerScheme scheme, const Stencil3x3& st, const CornerKin& kin) {
    const double ac = st.a[1][1];
    switch (scheme) {
    case CornerScheme::Upwind:
        return ac;
    case CornerScheme::AvgMin: {
        const int sx = sgn(kin.dxp), sy = sgn(kin.dyp);
        const double pair_avg = 0.5 * (ac + st.a[1 + sx][1 + sy]);
        return std::min(ac, pair_avg);
    }
    case CornerScheme::LinearXY: {
        const double gx = limited_gradient_1d(st.a[0][1], ac, st.a[2][1], st.xl[0][1].x,
                                              st.xl[1][1].x, st.xl[2][1].x);
        const double gy = limited_gradient_1d(st.a[1][0], ac, st.a[1][2], st.xl[1][0].y,
                                              st.xl[1][1].y, st.xl[1][2].y);
        return ac + 0.5 * gx * (kin.sgn_fx * kin.lag_wx - kin.u_fx_dt) +
               0.5 * gy * (kin.sgn_fy * kin.lag_wy - kin.u_fy_dt);
    }
    case CornerScheme::LinearDiag: {
        const double diag = std::sqrt(kin.dx * kin.dx + kin.dy * kin.dy);
        const double sx = kin.dxp >= 0.0 ? 1.0 : -1.0;
        const Vec2 disp{kin.dxp, kin.dyp};
        if (kin.dxp * kin.dyp > 0.0) {
            const Vec2 v{kin.dx / diag, kin.dy / diag};
            const double gv = diag_gradient(st, 0, 0, 2, 2, v);
            const Vec2 ext{kin.lag_wx, kin.lag_wy};
            return ac + 0.5 * gv * dot(sx * ext - disp, v);
        }
        const Vec2 vp{kin.dx / diag, -kin.dy / diag};
        const double gvp = diag_gradient(st, 0, 2, 2, 0, vp);
        const Vec2 ext{kin.lag_wx, -kin.lag_wy};
        return ac + 0.5 * gvp * dot(sx * ext - disp, vp);
    }
    case CornerScheme::Multid: {
        const PlaneRecon pl = multid_plane(st, kin.dx, kin.dy);
        return pl.a0 + dot(pl.grad, kin.eval_rel);
    }
    }
    return ac;
}

} // namespace hydro
