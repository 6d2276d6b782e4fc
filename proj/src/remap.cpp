#include "hydro/remap.hpp"

#include "hydro/vof.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace hydro {

namespace {
constexpr double kCflFrac = 0.9;
}

CornerFlux cf_corner_flux(const Vec2& u_half, double dt) {
    const double dx = u_half.x * dt;
    const double dy = u_half.y * dt;
    CornerFlux f;
    f.dvol = std::abs(dx * dy);
    if (f.dvol == 0.0) return {};
    f.sx = dx > 0.0 ? 1 : -1;
    f.sy = dy > 0.0 ? 1 : -1;
    return f;
}

CfFaceFlux cf_face_flux_x(double ym, double yp, const Vec2& dm, const Vec2& dp) {
    CfFaceFlux f;
    const double wlo = ym + std::max(0.0, dm.y);
    const double whi = yp + std::min(0.0, dp.y);
    if (whi <= wlo) return f;
    f.wlo = wlo;
    f.whi = whi;
    // Lagrangian face line through the displaced nodes; offsets are measured
    // from the Eulerian face line.
    const double den = (yp + dp.y) - (ym + dm.y);
    double xlo, xhi;
    if (std::abs(den) < 1e-300) {
        xlo = xhi = 0.5 * (dm.x + dp.x);
    } else {
        const double slope = (dp.x - dm.x) / den;
        xlo = dm.x + slope * (wlo - (ym + dm.y));
        xhi = dm.x + slope * (whi - (ym + dm.y));
    }
    f.dvol = 0.5 * (xlo + xhi) * (whi - wlo);
    return f;
}

CfFaceFlux cf_face_flux_y(double xm, double xp, const Vec2& dm, const Vec2& dp) {
    return cf_face_flux_x(xm, xp, {dm.y, dm.x}, {dp.y, dp.x});
}

Field<double> ad_face_fluxes(Axis axis, const Mesh& mesh, const Field<Vec2>& u_half, double dt) {
    const double cv = mesh.cell_volume();
    if (axis == Axis::X) {
        Field<double> f(mesh.nx + 1, mesh.ny);
        for (int j = 0; j < mesh.ny; ++j)
            for (int i = 0; i <= mesh.nx; ++i) {
                f(i, j) = 0.5 * (u_half(i, j).x + u_half(i, j + 1).x) * dt * mesh.dy;
                if (std::abs(f(i, j)) > kCflFrac * cv)
                    throw CflViolationError("CFL violation at X-face", i, j);
            }
        return f;
    }
    Field<double> f(mesh.nx, mesh.ny + 1);
    for (int j = 0; j <= mesh.ny; ++j)
        for (int i = 0; i < mesh.nx; ++i) {
            f(i, j) = 0.5 * (u_half(i, j).y + u_half(i + 1, j).y) * dt * mesh.dx;
            if (std::abs(f(i, j)) > kCflFrac * cv)
                throw CflViolationError("CFL violation at Y-face", i, j);
        }
    return f;
}

// ===========================================================================
// engine internals
// ===========================================================================
namespace {

struct Ix {
    int i, j;
};

// (along, cross) -> (i, j)
Ix cellix(Axis ax, int ia, int ic) { return ax == Axis::X ? Ix{ia, ic} : Ix{ic, ia}; }
Ix nodeix(Axis ax, int ia, int ic) { return ax == Axis::X ? Ix{ia, ic} : Ix{ic, ia}; }

struct Work {
    const Mesh* mesh = nullptr;
    int nmat = 1;
    std::array<Field<double>, kMaxMat> m;  // partial masses
    std::array<Field<double>, kMaxMat> me; // partial mass * specific energy
    std::array<Field<double>, kMaxMat> e;  // current specific energies (stencil data)
    std::array<Field<double>, kMaxMat> k;  // current volume fractions
    Field<Vec2> normals;
    Field<double> mcell; // mixture mass, refreshed per pass
    Field<Vec2> u;       // node velocities being remapped
};

bool is_mixed(double k0) { return k0 > kPureTol && k0 < 1.0 - kPureTol; }

void refresh_normals_impl(const Mesh& mesh, const Field<double>& k0, const Field<double>& k1,
                          Field<Vec2>& normals) {
    for (int j = 0; j < mesh.ny; ++j)
        for (int i = 0; i < mesh.nx; ++i) {
            if (!is_mixed(k0(i, j))) continue;
            try {
                normals(i, j) = youngs_normal(k1, i, j, mesh.dx, mesh.dy);
            } catch (const IsolatedMixedCellError&) {
                // keep the previous normal
            }
        }
    fill_ghost_cells(mesh, normals);
}

Work make_work(const State& s, const LagrangeResult& lag) {
    Work w;
    w.mesh = &s.mesh;
    w.nmat = s.nmat;
    const int nx = s.mesh.nx, ny = s.mesh.ny;
    for (int a = 0; a < s.nmat; ++a) {
        w.m[a] = s.m[a];
        w.e[a] = lag.e_lag[a];
        w.k[a] = s.k[a];
        w.me[a] = Field<double>(nx, ny);
        for (int j = -kGhost; j < ny + kGhost; ++j)
            for (int i = -kGhost; i < nx + kGhost; ++i)
                w.me[a](i, j) = w.m[a](i, j) * w.e[a](i, j);
    }
    w.normals = s.iface_normal;
    w.u = lag.u_lag;
    w.mcell = Field<double>(nx, ny);
    for (int j = -kGhost; j < ny + kGhost; ++j)
        for (int i = -kGhost; i < nx + kGhost; ++i) {
            double m = 0.0;
            for (int a = 0; a < s.nmat; ++a) m += w.m[a](i, j);
            w.mcell(i, j) = m;
        }
    return w;
}

/// Post-flux cell fixups: fractions from remapped material volumes, clipping
/// with violation bookkeeping, pure-cell snapping, energies from m*e.
/// Snapped or over-drawn material slivers are redistributed to the closest
/// cell still holding that material, so per-material masses stay conserved.
void finalize_cells(Work& w, const std::array<Field<double>, kMaxMat>& vola, RemapDiag* diag) {
    const Mesh& mesh = *w.mesh;
    const double cv = mesh.cell_volume();
    struct Sliver {
        int i, j, a;
        double m, me;
    };
    std::vector<Sliver> pending;
    for (int j = 0; j < mesh.ny; ++j)
        for (int i = 0; i < mesh.nx; ++i) {
            if (w.nmat == 2) {
                double k0 = vola[0](i, j) / cv;
                const double k1 = vola[1](i, j) / cv;
                const double viol =
                    std::max({0.0, -k0, k0 - 1.0, -k1, k1 - 1.0, std::abs(k0 + k1 - 1.0)});
                if (diag && viol > diag->max_k_violation) diag->max_k_violation = viol;
                if (k0 < 0.0 || k0 > 1.0) {
                    if (diag) ++diag->k_clip_count;
                    k0 = std::clamp(k0, 0.0, 1.0);
                }
                if (k0 < kPureTol) k0 = 0.0;
                if (k0 > 1.0 - kPureTol) k0 = 1.0;
                w.k[0](i, j) = k0;
                w.k[1](i, j) = 1.0 - k0;
                for (int a = 0; a < 2; ++a) {
                    if ((w.k[a](i, j) == 0.0 && w.m[a](i, j) != 0.0) || w.m[a](i, j) < 0.0) {
                        pending.push_back({i, j, a, w.m[a](i, j), w.me[a](i, j)});
                        w.m[a](i, j) = 0.0;
                        w.me[a](i, j) = 0.0;
                        if (w.k[a](i, j) > 0.0) {
                            // a negative partial mass with volume left behind
                            w.k[a](i, j) = 0.0;
                            w.k[1 - a](i, j) = 1.0;
                        }
                    }
                }
            }
            double mtot = 0.0;
            for (int a = 0; a < w.nmat; ++a) {
                const double ma = w.m[a](i, j);
                if (ma < 0.0) throw NegativeMassError("negative mass", i, j);
                w.e[a](i, j) = ma > 0.0 ? w.me[a](i, j) / ma : 0.0;
                mtot += ma;
            }
            if (mtot <= 0.0) throw NegativeMassError("non-positive cell mass", i, j);
            w.mcell(i, j) = mtot;
        }

    for (const Sliver& s : pending) {
        int bi = -1, bj = -1;
        double bk = -1.0;
        for (int r = 1; r <= 2 && bi < 0; ++r)
            for (int dj = -r; dj <= r; ++dj)
                for (int di = -r; di <= r; ++di) {
                    if (std::max(std::abs(di), std::abs(dj)) != r) continue;
                    int ni = s.i + di, nj = s.j + dj;
                    if (mesh.periodic_x()) ni = (ni + 2 * mesh.nx) % mesh.nx;
                    if (mesh.periodic_y()) nj = (nj + 2 * mesh.ny) % mesh.ny;
                    if (ni < 0 || ni >= mesh.nx || nj < 0 || nj >= mesh.ny) continue;
                    if (w.m[s.a](ni, nj) <= 0.0) continue;
                    if (w.k[s.a](ni, nj) > bk) {
                        bk = w.k[s.a](ni, nj);
                        bi = ni;
                        bj = nj;
                    }
                }
        if (bi >= 0 && w.m[s.a](bi, bj) + s.m > 0.0) {
            w.m[s.a](bi, bj) += s.m;
            w.me[s.a](bi, bj) += s.me;
            w.e[s.a](bi, bj) = w.me[s.a](bi, bj) / w.m[s.a](bi, bj);
            w.mcell(bi, bj) += s.m;
        } else {
            // no carrier nearby: the sliver joins the partner material
            if (diag) ++diag->mass_fix_count;
            const int b = 1 - s.a;
            w.m[b](s.i, s.j) += s.m;
            w.me[b](s.i, s.j) += s.me;
            w.e[b](s.i, s.j) = w.me[b](s.i, s.j) / w.m[b](s.i, s.j);
            w.mcell(s.i, s.j) += s.m;
        }
    }
    for (int a = 0; a < w.nmat; ++a) {
        fill_ghost_cells(mesh, w.m[a]);
        fill_ghost_cells(mesh, w.me[a]);
        fill_ghost_cells(mesh, w.e[a]);
        fill_ghost_cells(mesh, w.k[a]);
    }
    fill_ghost_cells(mesh, w.mcell);
}

/// Interface cache entry used to partition the fluxes of one mixed donor.
struct CellIface {
    bool mixed = false;
    Rect rect;
    InterfaceLine line;
};

double box_frac0(const CellIface& ci, const Rect& box) {
    const double area = box.area();
    if (!(area > 0.0)) {
        const double s = dot(ci.line.normal, box.center() - ci.rect.center()) - ci.line.d;
        return s <= 0.0 ? 1.0 : 0.0;
    }
    const double dbox = ci.line.d - dot(ci.line.normal, box.center() - ci.rect.center());
    return clipped_fraction(box.width(), box.height(), ci.line.normal, dbox);
}

/// Material split of a signed flux volume against the donor's interface.
void split_flux(const Work& w, const Field<CellIface>& iface, int di, int dj, const Rect& box,
                double dvol, double dva[kMaxMat]) {
    dva[0] = dvol;
    dva[1] = 0.0;
    if (w.nmat != 2) return;
    const CellIface& ci = iface(di, dj);
    if (ci.mixed) {
        const double f0 = box_frac0(ci, box);
        dva[0] = f0 * dvol;
        dva[1] = dvol - dva[0];
    } else if (w.k[0](di, dj) < 0.5) {
        dva[0] = 0.0;
        dva[1] = dvol;
    }
}

bool stencil_pure_1d(const Work& w, int a, Axis ax, int ia_d, int ic) {
    for (int d = -1; d <= 1; ++d) {
        const Ix c = cellix(ax, ia_d + d, ic);
        if (w.k[a](c.i, c.j) < 1.0 - kPureTol) return false;
    }
    return true;
}

bool stencil_pure_3x3(const Work& w, int a, int i, int j) {
    for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di)
            if (w.k[a](i + di, j + dj) < 1.0 - kPureTol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// per-axis rectangle geometry of the split/direct fluxes
// ---------------------------------------------------------------------------
struct AxisGeom {
    Axis axis;
    int na, nc;
    double wa, wc;
    Field<double> fd;          // face-mean displacement, (along, cross) layout
    Field<double> xlagc, wlag; // Lagrangian centroid coordinate / width, (along, cross)
};

AxisGeom make_axis_geom(Axis ax, const Mesh& mesh, const Field<Vec2>& u_half, double dt) {
    AxisGeom g;
    g.axis = ax;
    g.na = ax == Axis::X ? mesh.nx : mesh.ny;
    g.nc = ax == Axis::X ? mesh.ny : mesh.nx;
    g.wa = ax == Axis::X ? mesh.dx : mesh.dy;
    g.wc = ax == Axis::X ? mesh.dy : mesh.dx;
    g.fd = Field<double>(g.na + 1, g.nc);
    for (int ic = -kGhost; ic < g.nc + kGhost; ++ic)
        for (int ia = -kGhost; ia <= g.na + kGhost; ++ia) {
            const Ix n0 = nodeix(ax, ia, ic);
            const Ix n1 = nodeix(ax, ia, ic + 1);
            const double u0 = ax == Axis::X ? u_half(n0.i, n0.j).x : u_half(n0.i, n0.j).y;
            const double u1 = ax == Axis::X ? u_half(n1.i, n1.j).x : u_half(n1.i, n1.j).y;
            g.fd(ia, ic) = 0.5 * (u0 + u1) * dt;
        }
    g.xlagc = Field<double>(g.na, g.nc);
    g.wlag = Field<double>(g.na, g.nc);
    const double origin = ax == Axis::X ? mesh.x0 : mesh.y0;
    for (int ic = -kGhost; ic < g.nc + kGhost; ++ic)
        for (int ia = -kGhost; ia < g.na + kGhost; ++ia) {
            const double dl = g.fd(ia, ic), dr = g.fd(ia + 1, ic);
            g.xlagc(ia, ic) = origin + (ia + 0.5) * g.wa + 0.5 * (dl + dr);
            g.wlag(ia, ic) = g.wa + (dr - dl);
        }
    return g;
}

/// Rectangle flux box of a split/direct face, in absolute coordinates.
Rect face_flux_box(const Mesh& mesh, Axis ax, int ia, int ic, double d) {
    if (ax == Axis::X) {
        const double xf = mesh.x0 + ia * mesh.dx;
        return {{std::min(xf, xf + d), mesh.y0 + ic * mesh.dy},
                {std::max(xf, xf + d), mesh.y0 + (ic + 1) * mesh.dy}};
    }
    const double yf = mesh.y0 + ia * mesh.dy;
    return {{mesh.x0 + ic * mesh.dx, std::min(yf, yf + d)},
            {mesh.x0 + (ic + 1) * mesh.dx, std::max(yf, yf + d)}};
}

// ---------------------------------------------------------------------------
// dual-mesh (momentum) machinery
// ---------------------------------------------------------------------------
int wrapi(int i, int n, bool periodic) {
    if (!periodic) return i;
    int r = i % n;
    if (r < 0) r += n;
    return r;
}

struct NodeRange {
    int iend, jend; // inclusive extents of the unique node set
};

NodeRange unique_nodes(const Mesh& mesh) {
    return {mesh.periodic_x() ? mesh.nx - 1 : mesh.nx, mesh.periodic_y() ? mesh.ny - 1 : mesh.ny};
}

struct MomAcc {
    const Mesh* mesh;
    Field<Vec2> d;
    explicit MomAcc(const Mesh& m) : mesh(&m), d(m.nx + 1, m.ny + 1) {}
    void add(int i, int j, const Vec2& v) {
        const int nux = mesh->periodic_x() ? mesh->nx : mesh->nx + 1;
        const int nuy = mesh->periodic_y() ? mesh->ny : mesh->ny + 1;
        i = wrapi(i, nux, mesh->periodic_x());
        j = wrapi(j, nuy, mesh->periodic_y());
        if (i < 0 || i >= nux || j < 0 || j >= nuy) return;
        d(i, j) += v;
    }
};

/// Extend a per-face mass-flux field by the one ghost ring the dual-mesh
/// quarter sums read: periodic wrap, or mirror at walls (the along-mirror
/// flips the flux sign with the velocity's normal component).
void fill_face_flux_ghosts(const Mesh& mesh, Axis ax, Field<double>& dmface) {
    const int na = ax == Axis::X ? mesh.nx : mesh.ny;
    const int nc = ax == Axis::X ? mesh.ny : mesh.nx;
    const bool per_a = ax == Axis::X ? mesh.periodic_x() : mesh.periodic_y();
    const bool per_c = ax == Axis::X ? mesh.periodic_y() : mesh.periodic_x();
    for (int ia = 0; ia <= na; ++ia) {
        dmface(ia, -1) = per_c ? dmface(ia, nc - 1) : dmface(ia, 0);
        dmface(ia, nc) = per_c ? dmface(ia, 0) : dmface(ia, nc - 1);
    }
    for (int ic = -1; ic <= nc; ++ic)
        dmface(-1, ic) = per_a ? dmface(na - 1, ic) : -dmface(1, ic);
}

double dual_face_value(const Field<Vec2>& u, bool comp_x, Axis ax, int ia_d, int ic,
                       const Field<Vec2>& u_half, double dt, double wa, double sgn, double ufdt,
                       int order) {
    auto uval = [&](int ia) {
        const Ix n = nodeix(ax, ia, ic);
        return comp_x ? u(n.i, n.j).x : u(n.i, n.j).y;
    };
    if (order <= 1) return uval(ia_d);
    auto ndisp = [&](int ia) {
        const Ix n = nodeix(ax, ia, ic);
        return (ax == Axis::X ? u_half(n.i, n.j).x : u_half(n.i, n.j).y) * dt;
    };
    Stencil1D st;
    for (int d = -1; d <= 1; ++d) {
        st.a[d + 1] = uval(ia_d + d);
        st.x[d + 1] = (ia_d + d) * wa + ndisp(ia_d + d);
    }
    const double dfl = 0.5 * (ndisp(ia_d - 1) + ndisp(ia_d));
    const double dfr = 0.5 * (ndisp(ia_d) + ndisp(ia_d + 1));
    return face_value(2, st, sgn, wa + (dfr - dfl), ufdt);
}

/// Momentum remap across dual faces: fluxes are quarter-averages of the
/// primal-face mass fluxes (dmface in (along, cross) layout).
void dual_face_pass(const Work& w, Axis ax, const Field<double>& dmface,
                    const Field<Vec2>& u_half, double dt, const ReconConfig& rc, MomAcc& acc) {
    const Mesh& mesh = *w.mesh;
    const NodeRange nr = unique_nodes(mesh);
    const int na_nodes = ax == Axis::X ? nr.iend : nr.jend;
    const int nc_nodes = ax == Axis::X ? nr.jend : nr.iend;
    const bool per_a = ax == Axis::X ? mesh.periodic_x() : mesh.periodic_y();
    const double wa = ax == Axis::X ? mesh.dx : mesh.dy;
    // dual face ia joins nodes (ia-1) and (ia) along the axis
    const int ia_lo = per_a ? 0 : 1;
    const int ia_hi = na_nodes;
    for (int ic = 0; ic <= nc_nodes; ++ic)
        for (int ia = ia_lo; ia <= ia_hi; ++ia) {
            const double dm = 0.25 * ((dmface(ia - 1, ic - 1) + dmface(ia - 1, ic)) +
                                      (dmface(ia, ic - 1) + dmface(ia, ic)));
            if (dm == 0.0) continue;
            const int ia_d = dm > 0.0 ? ia - 1 : ia;
            const double sgn = dm > 0.0 ? 1.0 : -1.0;
            auto ndisp = [&](int iia) {
                const Ix n = nodeix(ax, iia, ic);
                return (ax == Axis::X ? u_half(n.i, n.j).x : u_half(n.i, n.j).y) * dt;
            };
            const double ufdt = 0.5 * (ndisp(ia - 1) + ndisp(ia));
            Vec2 uf;
            uf.x = dual_face_value(w.u, true, ax, ia_d, ic, u_half, dt, wa, sgn, ufdt,
                                   rc.face_order);
            uf.y = dual_face_value(w.u, false, ax, ia_d, ic, u_half, dt, wa, sgn, ufdt,
                                   rc.face_order);
            const Vec2 dmu = dm * uf;
            const Ix np = nodeix(ax, ia, ic);
            const Ix nm = nodeix(ax, ia - 1, ic);
            acc.add(np.i, np.j, dmu);
            acc.add(nm.i, nm.j, -1.0 * dmu);
        }
}

void apply_dual_update(Work& w, const Field<double>& mcell_lag, const MomAcc& acc) {
    const Mesh& mesh = *w.mesh;
    const NodeRange nr = unique_nodes(mesh);
    Field<Vec2> unew = w.u;
    auto quarter = [&](const Field<double>& f, int i, int j) {
        return 0.25 * (f(i - 1, j - 1) + f(i, j - 1) + f(i - 1, j) + f(i, j));
    };
    for (int j = 0; j <= nr.jend; ++j)
        for (int i = 0; i <= nr.iend; ++i) {
            const double mp_lag = quarter(mcell_lag, i, j);
            const double mp_new = quarter(w.mcell, i, j);
            if (mp_new <= 0.0) throw NegativeMassError("non-positive nodal mass", i, j);
            unew(i, j) = (1.0 / mp_new) * (mp_lag * w.u(i, j) + acc.d(i, j));
        }
    if (mesh.periodic_x())
        for (int j = 0; j <= nr.jend; ++j) unew(mesh.nx, j) = unew(0, j);
    if (mesh.periodic_y())
        for (int i = 0; i <= mesh.nx; ++i) unew(i, mesh.ny) = unew(i, 0);
    fill_ghost_nodes(mesh, unew);
    w.u = unew;
}

// ---------------------------------------------------------------------------
// directional pass (the X- or Y-remap of the split scheme)
// ---------------------------------------------------------------------------
void directional_pass(Work& w, const Field<Vec2>& u_half, double dt, Axis ax,
                      const ReconConfig& rc, bool remap_velocity, RemapDiag* diag) {
    const Mesh& mesh = *w.mesh;
    const double cv = mesh.cell_volume();
    const int nx = mesh.nx, ny = mesh.ny;
    const AxisGeom g = make_axis_geom(ax, mesh, u_half, dt);
    const int na = g.na, nc = g.nc;

    // 1D Lagrangian volumes and per-material densities (cell layout)
    Field<double> vlag(nx, ny);
    std::array<Field<double>, kMaxMat> rho;
    for (int a = 0; a < w.nmat; ++a) rho[a] = Field<double>(nx, ny);
    for (int ic = -kGhost; ic < nc + kGhost; ++ic)
        for (int ia = -kGhost; ia < na + kGhost; ++ia) {
            const Ix c = cellix(ax, ia, ic);
            const double v = cv + (g.fd(ia + 1, ic) - g.fd(ia, ic)) * g.wc;
            if (v <= 0.0) throw CflViolationError("collapsed Lagrangian cell", c.i, c.j);
            vlag(c.i, c.j) = v;
            for (int a = 0; a < w.nmat; ++a) {
                const double ka = w.k[a](c.i, c.j);
                rho[a](c.i, c.j) = ka > 0.0 ? w.m[a](c.i, c.j) / (ka * v) : 0.0;
            }
        }

    Field<CellIface> iface;
    if (w.nmat == 2) {
        iface = Field<CellIface>(nx, ny);
        for (int ic = -kGhost; ic < nc + kGhost; ++ic)
            for (int ia = -kGhost; ia < na + kGhost; ++ia) {
                const Ix c = cellix(ax, ia, ic);
                const double k0 = w.k[0](c.i, c.j);
                if (!is_mixed(k0)) continue;
                CellIface ci;
                ci.mixed = true;
                const Vec2 cen = mesh.cell_center(c.i, c.j);
                const double dl = g.fd(ia, ic), dr = g.fd(ia + 1, ic);
                if (ax == Axis::X)
                    ci.rect = {{cen.x - 0.5 * mesh.dx + dl, cen.y - 0.5 * mesh.dy},
                               {cen.x + 0.5 * mesh.dx + dr, cen.y + 0.5 * mesh.dy}};
                else
                    ci.rect = {{cen.x - 0.5 * mesh.dx, cen.y - 0.5 * mesh.dy + dl},
                               {cen.x + 0.5 * mesh.dx, cen.y + 0.5 * mesh.dy + dr}};
                ci.line = place_interface(k0, w.normals(c.i, c.j), ci.rect);
                iface(c.i, c.j) = ci;
            }
    }

    std::array<Field<double>, kMaxMat> vola;
    for (int a = 0; a < w.nmat; ++a) {
        vola[a] = Field<double>(nx, ny);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) vola[a](i, j) = w.k[a](i, j) * vlag(i, j);
    }

    auto apply_cell = [&](int a, Axis axx, int ia, int ic, double dm, double dme, double dva) {
        const Ix c = cellix(axx, ia, ic);
        if (c.i < 0 || c.i >= nx || c.j < 0 || c.j >= ny) return;
        w.m[a](c.i, c.j) += dm;
        w.me[a](c.i, c.j) += dme;
        vola[a](c.i, c.j) += dva;
    };

    Field<double> dmface(na + 1, nc);
    for (int ic = 0; ic < nc; ++ic)
        for (int ia = 0; ia <= na; ++ia) {
            const double dvol = g.fd(ia, ic) * g.wc;
            dmface(ia, ic) = 0.0;
            if (dvol == 0.0) continue;
            if (std::abs(dvol) > kCflFrac * cv) {
                const Ix c = cellix(ax, ia, ic);
                throw CflViolationError("CFL violation at face", c.i, c.j);
            }
            const int ia_d = dvol > 0.0 ? ia - 1 : ia;
            const double sgn = dvol > 0.0 ? 1.0 : -1.0;
            const Ix cd = cellix(ax, ia_d, ic);

            double dva[kMaxMat];
            split_flux(w, iface, cd.i, cd.j, face_flux_box(mesh, ax, ia, ic, g.fd(ia, ic)), dvol,
                       dva);

            double dmtot = 0.0;
            for (int a = 0; a < w.nmat; ++a) {
                if (dva[a] == 0.0) continue;
                int order = rc.face_order;
                if (order == 2 && w.nmat == 2 && rc.interface_degrade &&
                    !stencil_pure_1d(w, a, ax, ia_d, ic))
                    order = 1;
                double rf, ef;
                if (order <= 1) {
                    rf = rho[a](cd.i, cd.j);
                    ef = w.e[a](cd.i, cd.j);
                } else {
                    Stencil1D sr, se;
                    for (int d = -1; d <= 1; ++d) {
                        const Ix cc = cellix(ax, ia_d + d, ic);
                        sr.a[d + 1] = rho[a](cc.i, cc.j);
                        se.a[d + 1] = w.e[a](cc.i, cc.j);
                        sr.x[d + 1] = se.x[d + 1] = g.xlagc(ia_d + d, ic);
                    }
                    rf = face_value(2, sr, sgn, g.wlag(ia_d, ic), g.fd(ia, ic));
                    ef = face_value(2, se, sgn, g.wlag(ia_d, ic), g.fd(ia, ic));
                }
                const double dm = rf * dva[a];
                const double dme = rf * ef * dva[a];
                dmtot += dm;
                apply_cell(a, ax, ia - 1, ic, -dm, -dme, -dva[a]);
                apply_cell(a, ax, ia, ic, dm, dme, dva[a]);
            }
            dmface(ia, ic) = dmtot;
        }
    fill_face_flux_ghosts(mesh, ax, dmface);

    const Field<double> mcell_lag = w.mcell;
    finalize_cells(w, vola, diag);
    if (remap_velocity) {
        MomAcc acc(mesh);
        dual_face_pass(w, ax, dmface, u_half, dt, rc, acc);
        apply_dual_update(w, mcell_lag, acc);
    }
    if (w.nmat == 2) refresh_normals_impl(mesh, w.k[0], w.k[1], w.normals);
}

// ---------------------------------------------------------------------------
// direct pass (one step, faces only)
// ---------------------------------------------------------------------------
void direct_pass(Work& w, const Field<Vec2>& u_half, double dt, const ReconConfig& rc,
                 bool remap_velocity, RemapDiag* diag) {
    const Mesh& mesh = *w.mesh;
    const double cv = mesh.cell_volume();
    const int nx = mesh.nx, ny = mesh.ny;
    const AxisGeom gx = make_axis_geom(Axis::X, mesh, u_half, dt);
    const AxisGeom gy = make_axis_geom(Axis::Y, mesh, u_half, dt);

    Field<double> vlag(nx, ny);
    std::array<Field<double>, kMaxMat> rho;
    for (int a = 0; a < w.nmat; ++a) rho[a] = Field<double>(nx, ny);
    for (int j = -kGhost; j < ny + kGhost; ++j)
        for (int i = -kGhost; i < nx + kGhost; ++i) {
            const double v = cv + (gx.fd(i + 1, j) - gx.fd(i, j)) * mesh.dy +
                             (gy.fd(j + 1, i) - gy.fd(j, i)) * mesh.dx;
            if (v <= 0.0) throw CflViolationError("collapsed Lagrangian cell", i, j);
            vlag(i, j) = v;
            for (int a = 0; a < w.nmat; ++a) {
                const double ka = w.k[a](i, j);
                rho[a](i, j) = ka > 0.0 ? w.m[a](i, j) / (ka * v) : 0.0;
            }
        }

    // one directionally displaced interface per axis and mixed cell
    Field<CellIface> ifx, ify;
    if (w.nmat == 2) {
        ifx = Field<CellIface>(nx, ny);
        ify = Field<CellIface>(nx, ny);
        for (int j = -kGhost; j < ny + kGhost; ++j)
            for (int i = -kGhost; i < nx + kGhost; ++i) {
                const double k0 = w.k[0](i, j);
                if (!is_mixed(k0)) continue;
                const Vec2 cen = mesh.cell_center(i, j);
                const double hx = 0.5 * mesh.dx, hy = 0.5 * mesh.dy;
                CellIface cx;
                cx.mixed = true;
                cx.rect = {{cen.x - hx + gx.fd(i, j), cen.y - hy},
                           {cen.x + hx + gx.fd(i + 1, j), cen.y + hy}};
                cx.line = place_interface(k0, w.normals(i, j), cx.rect);
                ifx(i, j) = cx;
                CellIface cy;
                cy.mixed = true;
                cy.rect = {{cen.x - hx, cen.y - hy + gy.fd(j, i)},
                           {cen.x + hx, cen.y + hy + gy.fd(j + 1, i)}};
                cy.line = place_interface(k0, w.normals(i, j), cy.rect);
                ify(i, j) = cy;
            }
    }

    std::array<Field<double>, kMaxMat> vola;
    for (int a = 0; a < w.nmat; ++a) {
        vola[a] = Field<double>(nx, ny);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) vola[a](i, j) = w.k[a](i, j) * vlag(i, j);
    }

    auto apply_cell = [&](int a, Axis ax, int ia, int ic, double dm, double dme, double dva) {
        const Ix c = cellix(ax, ia, ic);
        if (c.i < 0 || c.i >= nx || c.j < 0 || c.j >= ny) return;
        w.m[a](c.i, c.j) += dm;
        w.me[a](c.i, c.j) += dme;
        vola[a](c.i, c.j) += dva;
    };

    Field<double> dmx(nx + 1, ny), dmy(ny + 1, nx);
    for (const Axis ax : {Axis::X, Axis::Y}) {
        const AxisGeom& g = ax == Axis::X ? gx : gy;
        Field<double>& dmf = ax == Axis::X ? dmx : dmy;
        const Field<CellIface>& ifc = ax == Axis::X ? ifx : ify;
        const int na = g.na, nc = g.nc;
        for (int ic = 0; ic < nc; ++ic)
            for (int ia = 0; ia <= na; ++ia) {
                const double dvol = g.fd(ia, ic) * g.wc;
                dmf(ia, ic) = 0.0;
                if (dvol == 0.0) continue;
                if (std::abs(dvol) > kCflFrac * cv) {
                    const Ix c = cellix(ax, ia, ic);
                    throw CflViolationError("CFL violation at face", c.i, c.j);
                }
                const int ia_d = dvol > 0.0 ? ia - 1 : ia;
                const double sgn = dvol > 0.0 ? 1.0 : -1.0;
                const Ix cd = cellix(ax, ia_d, ic);

                double dva[kMaxMat];
                split_flux(w, ifc, cd.i, cd.j, face_flux_box(mesh, ax, ia, ic, g.fd(ia, ic)),
                           dvol, dva);

                double dmtot = 0.0;
                for (int a = 0; a < w.nmat; ++a) {
                    if (dva[a] == 0.0) continue;
                    int order = rc.face_order;
                    if (order == 2 && w.nmat == 2 && rc.interface_degrade &&
                        !stencil_pure_1d(w, a, ax, ia_d, ic))
                        order = 1;
                    double rf, ef;
                    if (order <= 1) {
                        rf = rho[a](cd.i, cd.j);
                        ef = w.e[a](cd.i, cd.j);
                    } else {
                        Stencil1D sr, se;
                        for (int d = -1; d <= 1; ++d) {
                            const Ix cc = cellix(ax, ia_d + d, ic);
                            sr.a[d + 1] = rho[a](cc.i, cc.j);
                            se.a[d + 1] = w.e[a](cc.i, cc.j);
                            sr.x[d + 1] = se.x[d + 1] = g.xlagc(ia_d + d, ic);
                        }
                        rf = face_value(2, sr, sgn, g.wlag(ia_d, ic), g.fd(ia, ic));
                        ef = face_value(2, se, sgn, g.wlag(ia_d, ic), g.fd(ia, ic));
                    }
                    const double dm = rf * dva[a];
                    const double dme = rf * ef * dva[a];
                    dmtot += dm;
                    apply_cell(a, ax, ia - 1, ic, -dm, -dme, -dva[a]);
                    apply_cell(a, ax, ia, ic, dm, dme, dva[a]);
                }
                dmf(ia, ic) = dmtot;
            }
    }
    fill_face_flux_ghosts(mesh, Axis::X, dmx);
    fill_face_flux_ghosts(mesh, Axis::Y, dmy);

    const Field<double> mcell_lag = w.mcell;
    finalize_cells(w, vola, diag);
    if (remap_velocity) {
        MomAcc acc(mesh);
        dual_face_pass(w, Axis::X, dmx, u_half, dt, rc, acc);
        dual_face_pass(w, Axis::Y, dmy, u_half, dt, rc, acc);
        apply_dual_update(w, mcell_lag, acc);
    }
    if (w.nmat == 2) refresh_normals_impl(mesh, w.k[0], w.k[1], w.normals);
}

// ---------------------------------------------------------------------------
// direct pass with corner fluxes
// ---------------------------------------------------------------------------
struct CfFaceData {
    double dvol = 0.0;
    double wlo = 0.0, whi = 0.0;
};

void cf_pass(Work& w, const Field<Vec2>& u_half, double dt, const ReconConfig& rc,
             bool remap_velocity, RemapDiag* diag) {
    const Mesh& mesh = *w.mesh;
    const double cv = mesh.cell_volume();
    const int nx = mesh.nx, ny = mesh.ny;
    const AxisGeom gx = make_axis_geom(Axis::X, mesh, u_half, dt);
    const AxisGeom gy = make_axis_geom(Axis::Y, mesh, u_half, dt);

    auto disp = [&](int i, int j) { return dt * u_half(i, j); };

    Field<CfFaceData> fx(nx + 1, ny), fy(nx, ny + 1);
    Field<CornerFlux> cfn(nx + 1, ny + 1);
    for (int j = -kGhost; j < ny + kGhost; ++j)
        for (int i = -kGhost; i <= nx + kGhost; ++i) {
            const CfFaceFlux f = cf_face_flux_x(mesh.y0 + j * mesh.dy, mesh.y0 + (j + 1) * mesh.dy,
                                                disp(i, j), disp(i, j + 1));
            fx(i, j) = {f.dvol, f.wlo, f.whi};
            if (std::abs(f.dvol) > kCflFrac * cv)
                throw CflViolationError("CFL violation at X-face", i, j);
        }
    for (int j = -kGhost; j <= ny + kGhost; ++j)
        for (int i = -kGhost; i < nx + kGhost; ++i) {
            const CfFaceFlux f = cf_face_flux_y(mesh.x0 + i * mesh.dx, mesh.x0 + (i + 1) * mesh.dx,
                                                disp(i, j), disp(i + 1, j));
            fy(i, j) = {f.dvol, f.wlo, f.whi};
            if (std::abs(f.dvol) > kCflFrac * cv)
                throw CflViolationError("CFL violation at Y-face", i, j);
        }
    for (int j = -kGhost; j <= ny + kGhost; ++j)
        for (int i = -kGhost; i <= nx + kGhost; ++i) {
            cfn(i, j) = cf_corner_flux(u_half(i, j), dt);
            if (cfn(i, j).dvol > kCflFrac * cv)
                throw CflViolationError("CFL violation at corner", i, j);
        }

    Field<double> vlag(nx, ny);
    std::array<Field<double>, kMaxMat> rho;
    for (int a = 0; a < w.nmat; ++a) rho[a] = Field<double>(nx, ny);
    for (int j = -kGhost; j < ny + kGhost; ++j)
        for (int i = -kGhost; i < nx + kGhost; ++i) {
            double v = cv + fx(i + 1, j).dvol - fx(i, j).dvol + fy(i, j + 1).dvol - fy(i, j).dvol;
            auto corner_term = [&](int ni, int nj) {
                const CornerFlux& c = cfn(ni, nj);
                if (c.dvol == 0.0) return 0.0;
                const int di = c.sx > 0 ? ni - 1 : ni;
                const int dj = c.sy > 0 ? nj - 1 : nj;
                if (di == i && dj == j) return c.dvol; // this cell is the donor
                const int ri = c.sx > 0 ? ni : ni - 1;
                const int rj = c.sy > 0 ? nj : nj - 1;
                if (ri == i && rj == j) return -c.dvol; // this cell is the receiver
                return 0.0;
            };
            v += corner_term(i, j) + corner_term(i + 1, j) + corner_term(i, j + 1) +
                 corner_term(i + 1, j + 1);
            if (v <= 0.0) throw CflViolationError("collapsed Lagrangian cell", i, j);
            vlag(i, j) = v;
            for (int a = 0; a < w.nmat; ++a) {
                const double ka = w.k[a](i, j);
                rho[a](i, j) = ka > 0.0 ? w.m[a](i, j) / (ka * v) : 0.0;
            }
        }

    // 2D Lagrangian centroids for the multidimensional/diagonal stencils
    Field<Vec2> xlag2(nx, ny);
    for (int j = -kGhost; j < ny + kGhost; ++j)
        for (int i = -kGhost; i < nx + kGhost; ++i) {
            const Vec2 md =
                0.25 * (disp(i, j) + disp(i + 1, j) + disp(i, j + 1) + disp(i + 1, j + 1));
            xlag2(i, j) = mesh.cell_center(i, j) + md;
        }

    // single interface per mixed cell, on the rectangle through the middles
    // of the Lagrangian faces
    Field<CellIface> iface;
    if (w.nmat == 2) {
        iface = Field<CellIface>(nx, ny);
        for (int j = -kGhost; j < ny + kGhost; ++j)
            for (int i = -kGhost; i < nx + kGhost; ++i) {
                const double k0 = w.k[0](i, j);
                if (!is_mixed(k0)) continue;
                CellIface ci;
                ci.mixed = true;
                const Vec2 cen = mesh.cell_center(i, j);
                ci.rect = {{cen.x - 0.5 * mesh.dx + gx.fd(i, j),
                            cen.y - 0.5 * mesh.dy + gy.fd(j, i)},
                           {cen.x + 0.5 * mesh.dx + gx.fd(i + 1, j),
                            cen.y + 0.5 * mesh.dy + gy.fd(j + 1, i)}};
                ci.line = place_interface(k0, w.normals(i, j), ci.rect);
                iface(i, j) = ci;
            }
    }

    std::array<Field<double>, kMaxMat> vola;
    for (int a = 0; a < w.nmat; ++a) {
        vola[a] = Field<double>(nx, ny);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) vola[a](i, j) = w.k[a](i, j) * vlag(i, j);
    }

    auto apply_cell = [&](int a, int i, int j, double dm, double dme, double dva) {
        if (i < 0 || i >= nx || j < 0 || j >= ny) return;
        w.m[a](i, j) += dm;
        w.me[a](i, j) += dme;
        vola[a](i, j) += dva;
    };

    const bool multid_faces = rc.corner == CornerScheme::Multid && rc.face_order >= 2;
    auto gather3 = [&](const Field<double>& f, int di, int dj, Stencil3x3& st) {
        for (int q = 0; q < 3; ++q)
            for (int p = 0; p < 3; ++p) {
                st.a[p][q] = f(di + p - 1, dj + q - 1);
                st.xl[p][q] = xlag2(di + p - 1, dj + q - 1);
            }
    };

    // ---- face fluxes ----
    Field<double> dmx(nx + 1, ny), dmy(ny + 1, nx);
    for (const Axis ax : {Axis::X, Axis::Y}) {
        const AxisGeom& g = ax == Axis::X ? gx : gy;
        const int na = g.na, nc = g.nc;
        for (int ic = 0; ic < nc; ++ic)
            for (int ia = 0; ia <= na; ++ia) {
                double& dmslot = ax == Axis::X ? dmx(ia, ic) : dmy(ia, ic);
                dmslot = 0.0;
                const CfFaceData& fd = ax == Axis::X ? fx(ia, ic) : fy(ic, ia);
                const double dvol = fd.dvol;
                if (dvol == 0.0) continue;
                const int ia_d = dvol > 0.0 ? ia - 1 : ia;
                const double sgn = dvol > 0.0 ? 1.0 : -1.0;
                const Ix cd = cellix(ax, ia_d, ic);

                // equivalent-width rectangle over the trapezoid window
                const double wwin = fd.whi - fd.wlo;
                const double width = dvol / wwin;
                const double f0pos =
                    ax == Axis::X ? mesh.x0 + ia * mesh.dx : mesh.y0 + ia * mesh.dy;
                const double blo = std::min(f0pos, f0pos + width);
                const double bhi = std::max(f0pos, f0pos + width);
                const Rect box = ax == Axis::X ? Rect{{blo, fd.wlo}, {bhi, fd.whi}}
                                               : Rect{{fd.wlo, blo}, {fd.whi, bhi}};

                double dva[kMaxMat];
                split_flux(w, iface, cd.i, cd.j, box, dvol, dva);

                double dmtot = 0.0;
                for (int a = 0; a < w.nmat; ++a) {
                    if (dva[a] == 0.0) continue;
                    int order = rc.face_order;
                    if (order == 2 && w.nmat == 2 && rc.interface_degrade &&
                        !stencil_pure_1d(w, a, ax, ia_d, ic))
                        order = 1;
                    double rf, ef;
                    if (order <= 1) {
                        rf = rho[a](cd.i, cd.j);
                        ef = w.e[a](cd.i, cd.j);
                    } else if (multid_faces) {
                        Stencil3x3 sr, se;
                        gather3(rho[a], cd.i, cd.j, sr);
                        gather3(w.e[a], cd.i, cd.j, se);
                        rf = plane_eval(multid_plane(sr, mesh.dx, mesh.dy), box.center());
                        ef = plane_eval(multid_plane(se, mesh.dx, mesh.dy), box.center());
                    } else {
                        Stencil1D sr, se;
                        for (int d = -1; d <= 1; ++d) {
                            const Ix cc = cellix(ax, ia_d + d, ic);
                            sr.a[d + 1] = rho[a](cc.i, cc.j);
                            se.a[d + 1] = w.e[a](cc.i, cc.j);
                            sr.x[d + 1] = se.x[d + 1] = g.xlagc(ia_d + d, ic);
                        }
                        rf = face_value(2, sr, sgn, g.wlag(ia_d, ic), g.fd(ia, ic));
                        ef = face_value(2, se, sgn, g.wlag(ia_d, ic), g.fd(ia, ic));
                    }
                    const double dm = rf * dva[a];
                    const double dme = rf * ef * dva[a];
                    dmtot += dm;
                    if (ax == Axis::X) {
                        apply_cell(a, ia - 1, ic, -dm, -dme, -dva[a]);
                        apply_cell(a, ia, ic, dm, dme, dva[a]);
                    } else {
                        apply_cell(a, ic, ia - 1, -dm, -dme, -dva[a]);
                        apply_cell(a, ic, ia, dm, dme, dva[a]);
                    }
                }
                dmslot = dmtot;
            }
    }
    fill_face_flux_ghosts(mesh, Axis::X, dmx);
    fill_face_flux_ghosts(mesh, Axis::Y, dmy);

    // ---- corner fluxes ----
    Field<double> dmc(nx + 1, ny + 1); // total corner mass flux per node (>= 0)
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            dmc(i, j) = 0.0;
            const CornerFlux& c = cfn(i, j);
            if (c.dvol == 0.0) continue;
            const int di = c.sx > 0 ? i - 1 : i;
            const int dj = c.sy > 0 ? j - 1 : j;
            const int ri = c.sx > 0 ? i : i - 1;
            const int rj = c.sy > 0 ? j : j - 1;

            const Vec2 npos = mesh.node_pos(i, j);
            const Vec2 d = disp(i, j);
            const Rect box{{std::min(npos.x, npos.x + d.x), std::min(npos.y, npos.y + d.y)},
                           {std::max(npos.x, npos.x + d.x), std::max(npos.y, npos.y + d.y)}};
            double dva[kMaxMat];
            split_flux(w, iface, di, dj, box, c.dvol, dva);

            CornerKin kin;
            kin.dxp = d.x;
            kin.dyp = d.y;
            kin.lag_wx = gx.wlag(di, dj);
            kin.lag_wy = gy.wlag(dj, di);
            kin.dx = mesh.dx;
            kin.dy = mesh.dy;
            const int fxj = c.sy > 0 ? j - 1 : j;
            const int fyi = c.sx > 0 ? i - 1 : i;
            kin.sgn_fx = fx(i, fxj).dvol >= 0.0 ? 1.0 : -1.0;
            kin.u_fx_dt = gx.fd(i, fxj);
            kin.sgn_fy = fy(fyi, j).dvol >= 0.0 ? 1.0 : -1.0;
            kin.u_fy_dt = gy.fd(j, fyi);
            kin.eval_rel = box.center() - xlag2(di, dj);

            double dmtot = 0.0;
            for (int a = 0; a < w.nmat; ++a) {
                if (dva[a] == 0.0) continue;
                CornerScheme scheme = rc.corner;
                if (rc.face_order <= 1) scheme = CornerScheme::Upwind;
                if (scheme != CornerScheme::Upwind && w.nmat == 2 && rc.interface_degrade &&
                    !stencil_pure_3x3(w, a, di, dj))
                    scheme = CornerScheme::Upwind;
                double rf, ef;
                if (scheme == CornerScheme::Upwind) {
                    rf = rho[a](di, dj);
                    ef = w.e[a](di, dj);
                } else {
                    Stencil3x3 sr, se;
                    gather3(rho[a], di, dj, sr);
                    gather3(w.e[a], di, dj, se);
                    rf = std::max(corner_value(scheme, sr, kin), 0.0);
                    ef = corner_value(scheme, se, kin);
                }
                const double dm = rf * dva[a];
                const double dme = rf * ef * dva[a];
                dmtot += dm;
                apply_cell(a, di, dj, -dm, -dme, -dva[a]);
                apply_cell(a, ri, rj, dm, dme, dva[a]);
            }
            dmc(i, j) = dmtot;
        }
    // ghost rows/columns of the corner fluxes read by the dual quarter sums
    for (int i = 0; i <= nx; ++i)
        dmc(i, -1) = mesh.periodic_y() ? dmc(i, ny - 1) : dmc(i, 1);
    for (int j = -1; j <= ny; ++j)
        dmc(-1, j) = mesh.periodic_x() ? dmc(nx - 1, j) : dmc(1, j);

    const Field<double> mcell_lag = w.mcell;
    finalize_cells(w, vola, diag);

    if (remap_velocity) {
        MomAcc acc(mesh);
        dual_face_pass(w, Axis::X, dmx, u_half, dt, rc, acc);
        dual_face_pass(w, Axis::Y, dmy, u_half, dt, rc, acc);

        // dual-mesh corner fluxes: quarter sums of the nodal corner fluxes,
        // processed as one exchange per diagonal pair of dual cells
        const int iuniq = mesh.periodic_x() ? nx - 1 : nx;
        const int juniq = mesh.periodic_y() ? ny - 1 : ny;
        auto signed_cf = [&](int i, int j, int want_sx, int want_sy) {
            const CornerFlux& c = cfn(i, j);
            if (c.dvol == 0.0 || dmc(i, j) == 0.0) return 0.0;
            if (c.sx == want_sx && c.sy == want_sy) return -dmc(i, j);  // donor side
            if (c.sx == -want_sx && c.sy == -want_sy) return dmc(i, j); // receiver side
            return 0.0;
        };
        for (int j = 0; j <= juniq; ++j)
            for (int i = 0; i <= iuniq; ++i)
                for (const auto& [sx, sy] : {std::pair{1, 1}, std::pair{1, -1}}) {
                    const int pi = i + sx, pj = j + sy; // diagonal partner dual cell
                    if (!mesh.periodic_x() && (pi < 0 || pi > nx)) continue;
                    if (!mesh.periodic_y() && (pj < 0 || pj > ny)) continue;
                    // net mass gain of dual cell (i, j) through its (sx, sy) corner
                    const double F =
                        0.25 * (signed_cf(i, j, sx, sy) + signed_cf(i + sx, j, sx, sy) +
                                signed_cf(i, j + sy, sx, sy) + signed_cf(i + sx, j + sy, sx, sy));
                    if (F == 0.0) continue;
                    const bool incoming = F > 0.0;
                    const int di = incoming ? pi : i;
                    const int dj = incoming ? pj : j;
                    const int wi = wrapi(di, mesh.periodic_x() ? nx : nx + 1, mesh.periodic_x());
                    const int wj = wrapi(dj, mesh.periodic_y() ? ny : ny + 1, mesh.periodic_y());
                    CornerScheme scheme = rc.corner;
                    if (rc.face_order <= 1) scheme = CornerScheme::Upwind;
                    Vec2 uf;
                    if (scheme == CornerScheme::Upwind) {
                        uf = w.u(wi, wj);
                    } else {
                        // synthetic kinematics at the dual corner (the centre of
                        // the cell between the pair): mean cell displacement with
                        // signs forced along the exchange direction
                        const int ci = wrapi(std::min(i, pi), nx, mesh.periodic_x());
                        const int cj = wrapi(std::min(j, pj), ny, mesh.periodic_y());
                        const Vec2 md = xlag2(ci, cj) - mesh.cell_center(ci, cj);
                        const double dirx = incoming ? -sx : sx;
                        const double diry = incoming ? -sy : sy;
                        CornerKin kin;
                        kin.dxp = dirx * std::max(std::abs(md.x), 1e-300);
                        kin.dyp = diry * std::max(std::abs(md.y), 1e-300);
                        kin.dx = mesh.dx;
                        kin.dy = mesh.dy;
                        kin.lag_wx =
                            mesh.dx + 0.5 * (disp(wi + 1, wj).x - disp(wi - 1, wj).x);
                        kin.lag_wy =
                            mesh.dy + 0.5 * (disp(wi, wj + 1).y - disp(wi, wj - 1).y);
                        kin.sgn_fx = dirx;
                        kin.u_fx_dt = md.x;
                        kin.sgn_fy = diry;
                        kin.u_fy_dt = md.y;
                        kin.eval_rel = mesh.cell_center(ci, cj) + 0.5 * md -
                                       (mesh.node_pos(wi, wj) + disp(wi, wj));
                        Stencil3x3 sx3, sy3;
                        for (int q = 0; q < 3; ++q)
                            for (int p = 0; p < 3; ++p) {
                                const Vec2& uu = w.u(wi + p - 1, wj + q - 1);
                                sx3.a[p][q] = uu.x;
                                sy3.a[p][q] = uu.y;
                                sx3.xl[p][q] = sy3.xl[p][q] =
                                    mesh.node_pos(wi + p - 1, wj + q - 1) +
                                    disp(wi + p - 1, wj + q - 1);
                            }
                        uf.x = corner_value(scheme, sx3, kin);
                        uf.y = corner_value(scheme, sy3, kin);
                    }
                    acc.add(i, j, F * uf);
                    acc.add(pi, pj, -F * uf);
                }
        apply_dual_update(w, mcell_lag, acc);
    }
    if (w.nmat == 2) refresh_normals_impl(mesh, w.k[0], w.k[1], w.normals);
}

State assemble_state(const State& s, const MaterialSet& mats, Work& w, double dt) {
    State out = make_state(s.mesh, s.nmat);
    for (int a = 0; a < s.nmat; ++a) {
        out.m[a] = w.m[a];
        out.e[a] = w.e[a];
        out.k[a] = w.k[a];
    }
    out.iface_normal = w.normals;
    out.u = w.u;
    out.step = s.step + 1;
    out.time = s.time + dt;
    fill_ghosts(out);
    sync_derived(out, mats);
    return out;
}

} // namespace

void update_interface_normals(State& s) {
    if (s.nmat != 2) return;
    refresh_normals_impl(s.mesh, s.k[0], s.k[1], s.iface_normal);
}

State remap_single_axis(const State& s, const MaterialSet& mats, const LagrangeResult& lag,
                        double dt, Axis axis, const ReconConfig& rc, bool remap_velocity,
                        RemapDiag* diag) {
    Work w = make_work(s, lag);
    directional_pass(w, lag.u_half, dt, axis, rc, remap_velocity, diag);
    return assemble_state(s, mats, w, dt);
}

State remap_step(const State& s, const MaterialSet& mats, const LagrangeResult& lag, double dt,
                 RemapKind kind, const ReconConfig& rc, bool x_first, bool remap_velocity,
                 RemapDiag* diag) {
    Work w = make_work(s, lag);
    switch (kind) {
    case RemapKind::AD: {
        const Axis a1 = x_first ? Axis::X : Axis::Y;
        const Axis a2 = x_first ? Axis::Y : Axis::X;
        directional_pass(w, lag.u_half, dt, a1, rc, remap_velocity, diag);
        directional_pass(w, lag.u_half, dt, a2, rc, remap_velocity, diag);
        break;
    }
    case RemapKind::Direct:
        direct_pass(w, lag.u_half, dt, rc, remap_velocity, diag);
        break;
    case RemapKind::DirectCF:
        cf_pass(w, lag.u_half, dt, rc, remap_velocity, diag);
        break;
    }
    return assemble_state(s, mats, w, dt);
}

} // namespace hydro
