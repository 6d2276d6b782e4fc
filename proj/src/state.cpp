#include "hydro/state.hpp"

namespace hydro {

State make_state(const Mesh& mesh, int nmat) {
    State s;
    s.mesh = mesh;
    s.nmat = nmat;
    const int nx = mesh.nx, ny = mesh.ny;
    for (int a = 0; a < kMaxMat; ++a) {
        s.m[a] = Field<double>(nx, ny);
        s.e[a] = Field<double>(nx, ny);
        s.k[a] = Field<double>(nx, ny, a == 0 ? 1.0 : 0.0);
    }
    s.vol = Field<double>(nx, ny, mesh.cell_volume());
    s.m_mix = Field<double>(nx, ny);
    s.e_mix = Field<double>(nx, ny);
    s.rho_mix = Field<double>(nx, ny);
    s.p_mix = Field<double>(nx, ny);
    s.iface_normal = Field<Vec2>(nx, ny, Vec2{1.0, 0.0});
    s.u = Field<Vec2>(nx + 1, ny + 1);
    return s;
}

double cell_volume(const Vec2& p00, const Vec2& p10, const Vec2& p11, const Vec2& p01) {
    // Split along the p10-p01 diagonal: triangle at corner p00 spanned by the
    // bottom and left edges, triangle at corner p11 spanned by top and right.
    const double s1 = 0.5 * cross(p10 - p00, p01 - p00);
    const double s2 = 0.5 * cross(p01 - p11, p10 - p11);
    if (s1 <= 0.0 || s2 <= 0.0) throw TangledCellError("tangled cell");
    return s1 + s2;
}

double nodal_mass(const State& s, int i, int j) {
    return 0.25 * (s.m_mix(i - 1, j - 1) + s.m_mix(i, j - 1) + s.m_mix(i - 1, j) + s.m_mix(i, j));
}

Field<double> nodal_masses(const State& s) {
    Field<double> mp(s.mesh.nx + 1, s.mesh.ny + 1);
    for (int j = 0; j <= s.mesh.ny; ++j)
        for (int i = 0; i <= s.mesh.nx; ++i) mp(i, j) = nodal_mass(s, i, j);
    return mp;
}

namespace {

// Map a ghost index to its source index for one direction.
int wrap_cell(int i, int n, bool periodic) {
    if (periodic) return (i % n + n) % n;
    if (i < 0) return -1 - i;      // mirror across the wall face
    if (i >= n) return 2 * n - 1 - i;
    return i;
}

template <class T>
void fill_cell_ghosts(const Mesh& mesh, Field<T>& f) {
    const int nx = mesh.nx, ny = mesh.ny;
    for (int j = -kGhost; j < ny + kGhost; ++j) {
        const int js = wrap_cell(j, ny, mesh.periodic_y());
        for (int i = -kGhost; i < nx + kGhost; ++i) {
            if (i >= 0 && i < nx && j >= 0 && j < ny) continue;
            const int is = wrap_cell(i, nx, mesh.periodic_x());
            f(i, j) = f(is, js);
        }
    }
}

// Ghost node source index and whether the mirror flips the normal component.
struct NodeSrc { int i; bool flip; };

NodeSrc wrap_node(int i, int n, bool periodic) {
    if (periodic) {
        int s = i % n;
        if (s < 0) s += n;
        return {s, false};
    }
    if (i < 0) return {-i, true};
    if (i > n) return {2 * n - i, true};
    return {i, false};
}

} // namespace

void fill_ghost_cells(const Mesh& mesh, Field<double>& f) { fill_cell_ghosts(mesh, f); }
void fill_ghost_cells(const Mesh& mesh, Field<Vec2>& f) { fill_cell_ghosts(mesh, f); }

void fill_ghost_nodes(const Mesh& mesh, Field<Vec2>& u) {
    const int nx = mesh.nx, ny = mesh.ny;
    // Wall condition on the boundary nodes themselves.
    if (!mesh.periodic_x())
        for (int j = -kGhost; j <= ny + kGhost; ++j) {
            if (j >= 0 && j <= ny) { u(0, j).x = 0.0; u(nx, j).x = 0.0; }
        }
    if (!mesh.periodic_y())
        for (int i = 0; i <= nx; ++i) { u(i, 0).y = 0.0; u(i, ny).y = 0.0; }

    for (int j = -kGhost; j <= ny + kGhost; ++j) {
        const NodeSrc sj = wrap_node(j, ny, mesh.periodic_y());
        for (int i = -kGhost; i <= nx + kGhost; ++i) {
            if (i >= 0 && i <= nx && j >= 0 && j <= ny) continue;
            const NodeSrc si = wrap_node(i, nx, mesh.periodic_x());
            Vec2 v = u(si.i, sj.i);
            if (si.flip) v.x = -v.x;
            if (sj.flip) v.y = -v.y;
            u(i, j) = v;
        }
    }
}

void fill_ghosts(State& s) {
    for (int a = 0; a < s.nmat; ++a) {
        fill_ghost_cells(s.mesh, s.m[a]);
        fill_ghost_cells(s.mesh, s.e[a]);
        fill_ghost_cells(s.mesh, s.k[a]);
    }
    fill_ghost_cells(s.mesh, s.iface_normal);
    fill_ghost_nodes(s.mesh, s.u);
}

void sync_derived(State& s, const MaterialSet& mats) {
    const int nx = s.mesh.nx, ny = s.mesh.ny;
    const double cv = s.mesh.cell_volume();
    for (int j = -kGhost; j < ny + kGhost; ++j) {
        for (int i = -kGhost; i < nx + kGhost; ++i) {
            double m = 0.0, me = 0.0, p = 0.0;
            for (int a = 0; a < s.nmat; ++a) {
                const double ka = s.k[a](i, j);
                if (ka <= 0.0) continue;
                const double ma = s.m[a](i, j);
                m += ma;
                me += ma * s.e[a](i, j);
                if (ka < kThermoTol) continue; // passive sliver
                const double rho_a = ma / (ka * cv);
                p += ka * eos_pressure(mats.mat[a].eos, rho_a, s.e[a](i, j));
            }
            s.m_mix(i, j) = m;
            s.e_mix(i, j) = m > 0.0 ? me / m : 0.0;
            s.rho_mix(i, j) = m / cv;
            s.p_mix(i, j) = p;
            s.vol(i, j) = cv;
        }
    }
}

Totals compute_totals(const State& s) {
    Totals t;
    const int nx = s.mesh.nx, ny = s.mesh.ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            t.mass += s.m_mix(i, j);
            t.internal_energy += s.m_mix(i, j) * s.e_mix(i, j);
            for (int a = 0; a < s.nmat; ++a) t.mass_mat[a] += s.m[a](i, j);
        }
    // Each physical node counted once: periodic directions drop the last row/col.
    const int inode_end = s.mesh.periodic_x() ? nx - 1 : nx;
    const int jnode_end = s.mesh.periodic_y() ? ny - 1 : ny;
    for (int j = 0; j <= jnode_end; ++j)
        for (int i = 0; i <= inode_end; ++i) t.momentum += nodal_mass(s, i, j) * s.u(i, j);
    return t;
}

} // namespace hydro
