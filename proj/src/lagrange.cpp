#include "hydro/lagrange.hpp"

#include <cmath>

namespace hydro {

double pseudo_viscosity(double rho, double c_sound, double div_u,
                        const PseudoViscosityParams& prm, double L) {
    if (div_u >= 0.0) return 0.0;
    const double du = L * std::abs(div_u);
    return rho * prm.a1 * du * c_sound + prm.a2 * rho * du * du;
}

double div_u_cell(const Mesh& mesh, const Field<Vec2>& u, int i, int j) {
    const double ux_l = 0.5 * (u(i, j).x + u(i, j + 1).x);
    const double ux_r = 0.5 * (u(i + 1, j).x + u(i + 1, j + 1).x);
    const double uy_b = 0.5 * (u(i, j).y + u(i + 1, j).y);
    const double uy_t = 0.5 * (u(i, j + 1).y + u(i + 1, j + 1).y);
    return (ux_r - ux_l) / mesh.dx + (uy_t - uy_b) / mesh.dy;
}

Vec2 grad_pq_node(const Mesh& mesh, const Field<double>& p, const Field<double>& q, int i,
                  int j) {
    auto pq = [&](int ii, int jj) { return p(ii, jj) + q(ii, jj); };
    const double gx =
        (pq(i, j - 1) + pq(i, j) - pq(i - 1, j - 1) - pq(i - 1, j)) / (2.0 * mesh.dx);
    const double gy =
        (pq(i - 1, j) + pq(i, j) - pq(i - 1, j - 1) - pq(i, j - 1)) / (2.0 * mesh.dy);
    return {gx, gy};
}

namespace {

// Two-triangle quad volume evaluated from node displacements, so uniform
// motion keeps every cell volume bit-exactly at dx*dy (exact free stream).
double quad_volume_disp(double dx, double dy, const Vec2& d00, const Vec2& d10, const Vec2& d11,
                        const Vec2& d01, int i, int j) {
    const Vec2 eb{dx + d10.x - d00.x, d10.y - d00.y};
    const Vec2 el{d01.x - d00.x, dy + d01.y - d00.y};
    const Vec2 et{dx + d11.x - d01.x, d11.y - d01.y};
    const Vec2 er{d11.x - d10.x, dy + d11.y - d10.y};
    const double s1 = 0.5 * cross(eb, el);
    const double s2 = 0.5 * cross(et, er);
    if (s1 <= 0.0 || s2 <= 0.0) throw TangledCellError("tangled cell", i, j);
    return s1 + s2;
}

double mixture_sound_speed(const State& s, const MaterialSet& mats, int i, int j) {
    double c = 0.0;
    const double cv = s.mesh.cell_volume();
    for (int a = 0; a < s.nmat; ++a) {
        const double ka = s.k[a](i, j);
        if (ka < kThermoTol) continue; // passive sliver
        const double rho_a = s.m[a](i, j) / (ka * cv);
        double pa = eos_pressure(mats.mat[a].eos, rho_a, s.e[a](i, j));
        c += ka * sound_speed(mats.mat[a].eos, rho_a, pa);
    }
    return c;
}

} // namespace

Field<double> compute_q(const State& s, const MaterialSet& mats,
                        const PseudoViscosityParams& prm) {
    const Mesh& mesh = s.mesh;
    Field<double> q(mesh.nx, mesh.ny);
    const double L = mesh.char_length();
    for (int j = 0; j < mesh.ny; ++j)
        for (int i = 0; i < mesh.nx; ++i) {
            const double div = div_u_cell(mesh, s.u, i, j);
            if (div >= 0.0) continue;
            q(i, j) = pseudo_viscosity(s.rho_mix(i, j), mixture_sound_speed(s, mats, i, j), div,
                                       prm, L);
        }
    fill_ghost_cells(mesh, q);
    return q;
}

HalfStepState predict(const State& s, const MaterialSet& mats, double dt,
                      const PseudoViscosityParams& prm) {
    const Mesh& mesh = s.mesh;
    const int nx = mesh.nx, ny = mesh.ny;
    const double cv = mesh.cell_volume();
    HalfStepState h;
    h.q = compute_q(s, mats, prm);

    h.x_half = Field<Vec2>(nx + 1, ny + 1);
    Field<Vec2> dh(nx + 1, ny + 1);
    for (int j = -kGhost; j <= ny + kGhost; ++j)
        for (int i = -kGhost; i <= nx + kGhost; ++i) {
            dh(i, j) = 0.5 * dt * s.u(i, j);
            h.x_half(i, j) = mesh.node_pos(i, j) + dh(i, j);
        }

    h.vol_half = Field<double>(nx, ny);
    for (int a = 0; a < s.nmat; ++a) {
        h.e_half[a] = Field<double>(nx, ny);
        h.p_half[a] = Field<double>(nx, ny);
    }
    h.p_mix_half = Field<double>(nx, ny);

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double vol = quad_volume_disp(mesh.dx, mesh.dy, dh(i, j), dh(i + 1, j),
                                                dh(i + 1, j + 1), dh(i, j + 1), i, j);
            h.vol_half(i, j) = vol;
            double pmix = 0.0;
            for (int a = 0; a < s.nmat; ++a) {
                const double ka = s.k[a](i, j);
                if (ka < kThermoTol) {
                    if (ka > 0.0) h.e_half[a](i, j) = s.e[a](i, j); // frozen sliver
                    continue;
                }
                const double ma = s.m[a](i, j);
                const double rho_n = ma / (ka * cv);
                const double rho_h = ma / (ka * vol);
                const double pa_n = eos_pressure(mats.mat[a].eos, rho_n, s.e[a](i, j));
                double ea = s.e[a](i, j) - (pa_n + h.q(i, j)) * (1.0 / rho_h - 1.0 / rho_n);
                // a carried-over compression Q meeting a reversing flow can
                // undershoot the expansion work; keep e physical
                const double efloor = 1e-8 * std::abs(s.e[a](i, j));
                if (ea < efloor) {
                    ea = efloor;
                    ++h.floor_count;
                }
                h.e_half[a](i, j) = ea;
                h.p_half[a](i, j) = eos_pressure(mats.mat[a].eos, rho_h, ea);
                pmix += ka * h.p_half[a](i, j);
            }
            h.p_mix_half(i, j) = pmix;
        }
    fill_ghost_cells(mesh, h.p_mix_half);
    for (int a = 0; a < s.nmat; ++a) fill_ghost_cells(mesh, h.p_half[a]);

    h.u_half = Field<Vec2>(nx + 1, ny + 1);
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            const double rho_p = nodal_mass(s, i, j) / cv;
            const Vec2 g = grad_pq_node(mesh, h.p_mix_half, h.q, i, j);
            h.u_half(i, j) = s.u(i, j) - (0.5 * dt / rho_p) * g;
        }
    fill_ghost_nodes(mesh, h.u_half);
    return h;
}

LagrangeResult correct(const State& s, const MaterialSet& mats, const HalfStepState& half,
                       double dt) {
    const Mesh& mesh = s.mesh;
    const int nx = mesh.nx, ny = mesh.ny;
    const double cv = mesh.cell_volume();
    LagrangeResult r;
    r.u_half = half.u_half;
    r.q = half.q;

    Field<Vec2> dl(nx + 1, ny + 1);
    for (int j = -kGhost; j <= ny + kGhost; ++j)
        for (int i = -kGhost; i <= nx + kGhost; ++i) dl(i, j) = dt * half.u_half(i, j);

    r.u_lag = Field<Vec2>(nx + 1, ny + 1);
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i)
            r.u_lag(i, j) = 2.0 * half.u_half(i, j) - s.u(i, j);
    fill_ghost_nodes(mesh, r.u_lag);

    r.vol_lag = Field<double>(nx, ny);
    for (int a = 0; a < s.nmat; ++a) r.e_lag[a] = Field<double>(nx, ny);

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double vol = quad_volume_disp(mesh.dx, mesh.dy, dl(i, j), dl(i + 1, j),
                                                dl(i + 1, j + 1), dl(i, j + 1), i, j);
            r.vol_lag(i, j) = vol;
            for (int a = 0; a < s.nmat; ++a) {
                const double ka = s.k[a](i, j);
                if (ka < kThermoTol) {
                    if (ka > 0.0) r.e_lag[a](i, j) = s.e[a](i, j); // frozen sliver
                    continue;
                }
                const double ma = s.m[a](i, j);
                const double rho_n = ma / (ka * cv);
                const double rho_l = ma / (ka * vol);
                double ea = s.e[a](i, j) - (half.p_half[a](i, j) + half.q(i, j)) *
                                               (1.0 / rho_l - 1.0 / rho_n);
                const double efloor = 1e-8 * std::abs(s.e[a](i, j));
                if (ea < efloor) {
                    ea = efloor;
                    ++r.floor_count;
                }
                r.e_lag[a](i, j) = ea;
            }
        }
    for (int a = 0; a < s.nmat; ++a) fill_ghost_cells(mesh, r.e_lag[a]);
    r.floor_count += half.floor_count;
    (void)mats;
    return r;
}

} // namespace hydro
