#pragma once

#include "hydro/lagrange.hpp"
#include "hydro/reconstruct.hpp"
#include "hydro/state.hpp"

namespace hydro {

enum class RemapKind { AD, Direct, DirectCF };
enum class Axis { X, Y };

/// Rectangular corner flux at a node from its half-step velocity:
/// dvol = |dx * dy| >= 0, with the displacement signs identifying donor and
/// receiver quadrants. A zero component kills the flux.
struct CornerFlux {
    double dvol = 0.0;
    int sx = 0;
    int sy = 0;
};

CornerFlux cf_corner_flux(const Vec2& u_half, double dt);

/// Trapezoid face flux for the corner-flux remap, X-face version. The face
/// spans [ym, yp] at a fixed Eulerian x; disp_m/disp_p are the full-step node
/// displacements (u^{n+1/2} dt) at its lower/upper node. Offsets are measured
/// from the Eulerian face line, so a static face yields zero. The flux window
/// [wlo, whi] is the trapezoid's transverse extent (empty window => zero).
struct CfFaceFlux {
    double dvol = 0.0;
    double wlo = 0.0;
    double whi = 0.0;
};

CfFaceFlux cf_face_flux_x(double ym, double yp, const Vec2& disp_m, const Vec2& disp_p);
CfFaceFlux cf_face_flux_y(double xm, double xp, const Vec2& disp_m, const Vec2& disp_p);

/// Rectangle face fluxes of the split/direct remaps: face-mean normal
/// velocity times dt times the transverse width, signed along +axis.
/// The returned field is indexed by face (X-faces: (nx+1) x ny).
Field<double> ad_face_fluxes(Axis axis, const Mesh& mesh, const Field<Vec2>& u_half, double dt);

struct RemapDiag {
    double max_k_violation = 0.0; // worst pre-clip excursion of k outside [0,1]
    int k_clip_count = 0;
    int mass_fix_count = 0; // negative partial masses absorbed into the partner
};

/// One conservative remap of the Lagrangian state back onto the Eulerian
/// mesh. `x_first` selects the pass order of the split remap; `remap_velocity`
/// may be disabled for kinematic (imposed-velocity) runs.
State remap_step(const State& s, const MaterialSet& mats, const LagrangeResult& lag, double dt,
                 RemapKind kind, const ReconConfig& rc, bool x_first = true,
                 bool remap_velocity = true, RemapDiag* diag = nullptr);

/// Single directional pass (the X- or Y-remap of the split scheme), exposed
/// for the directional analyses and tests.
State remap_single_axis(const State& s, const MaterialSet& mats, const LagrangeResult& lag,
                        double dt, Axis axis, const ReconConfig& rc, bool remap_velocity = true,
                        RemapDiag* diag = nullptr);

/// Refresh the interface normals of mixed cells from the current volume
/// fractions (Youngs stencil); isolated mixed cells keep their previous
/// normal. No-op for single-material states.
void update_interface_normals(State& s);

} // namespace hydro
