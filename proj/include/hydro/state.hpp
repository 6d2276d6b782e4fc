#pragma once

#include "hydro/eos.hpp"
#include "hydro/field.hpp"
#include "hydro/mesh.hpp"
#include "hydro/vec2.hpp"

#include <array>
#include <string>

namespace hydro {

inline constexpr int kMaxMat = 2;

/// Volume fractions this close to 0 or 1 are snapped to a pure cell and the
/// trace material is redistributed to a nearby carrier.
inline constexpr double kPureTol = 1e-10;

/// Below this fraction a material is carried passively: it keeps its mass
/// and energy but is excluded from pressure, sound-speed and Lagrangian
/// updates (the division me/m of two near-zero fluxes is not meaningful).
inline constexpr double kThermoTol = 1e-6;

struct Material {
    std::string name;
    EosModel eos;
};

struct MaterialSet {
    int n = 1;
    std::array<Material, kMaxMat> mat{};
};

/// Staggered state: thermodynamics at cell centres, velocities at nodes.
/// Per-material cell fields are stored for up to two materials; with
/// nmat == 1 only slot 0 carries data and k[0] == 1 everywhere.
///
/// rho, p and the mixture m/e are derived caches refreshed by sync_derived().
struct State {
    Mesh mesh;
    int nmat = 1;

    // cell, per material
    std::array<Field<double>, kMaxMat> m;  // kg
    std::array<Field<double>, kMaxMat> e;  // J/kg
    std::array<Field<double>, kMaxMat> k;  // volume fraction

    // cell, mixture (derived)
    Field<double> vol;      // m^2 (unit depth), Eulerian cell volume
    Field<double> m_mix;    // kg
    Field<double> e_mix;    // J/kg
    Field<double> rho_mix;  // kg/m^3
    Field<double> p_mix;    // Pa

    // per-mixed-cell interface normal, oriented from material 0 into material 1
    Field<Vec2> iface_normal;

    // node
    Field<Vec2> u; // m/s

    int step = 0;
    double time = 0.0;
};

State make_state(const Mesh& mesh, int nmat);

/// Two-triangle cross-product area of the quad (p00, p10, p11, p01) given in
/// counter-clockwise order. Throws TangledCellError if either triangle has
/// non-positive signed area.
double cell_volume(const Vec2& p00, const Vec2& p10, const Vec2& p11, const Vec2& p01);

/// Quarter-sum nodal mass m_p = 1/4 sum of the four adjacent cell masses.
/// Requires ghost cells to be filled.
Field<double> nodal_masses(const State& s);
double nodal_mass(const State& s, int i, int j);

/// Fill ghost layers of one cell field according to the mesh BCs
/// (periodic wrap or mirror at walls).
void fill_ghost_cells(const Mesh& mesh, Field<double>& f);
void fill_ghost_cells(const Mesh& mesh, Field<Vec2>& f);

/// Fill ghost layers of the node velocity field. At walls the mirror image
/// has its normal component negated and on-wall nodes get u.n = 0.
void fill_ghost_nodes(const Mesh& mesh, Field<Vec2>& u);

/// Fill all ghost layers of the state's primitive fields.
void fill_ghosts(State& s);

/// Recompute mixture m, e, rho, p from the per-material fields (including
/// ghost cells, which must be filled first).
void sync_derived(State& s, const MaterialSet& mats);

struct Totals {
    double mass = 0.0;
    std::array<double, kMaxMat> mass_mat{};
    Vec2 momentum;
    double internal_energy = 0.0; // sum of m_c e_c
};

Totals compute_totals(const State& s);

} // namespace hydro
