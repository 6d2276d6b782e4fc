#pragma once

#include "hydro/state.hpp"

namespace hydro {

struct PseudoViscosityParams {
    double a1 = 0.2; // linear coefficient
    double a2 = 1.0; // quadratic coefficient
};

/// Compression-only pseudo-viscosity
///   Q = rho a1 L c |div u| + a2 L^2 rho |div u|^2   if div u < 0, else 0.
double pseudo_viscosity(double rho, double c_sound, double div_u,
                        const PseudoViscosityParams& prm, double L);

/// Cell divergence from face-averaged node velocities; exact on linear fields.
double div_u_cell(const Mesh& mesh, const Field<Vec2>& u, int i, int j);

/// Four-cell gradient of P+Q at node (i, j) (the corner shared by cells
/// (i-1,j-1), (i,j-1), (i-1,j), (i,j)).
Vec2 grad_pq_node(const Mesh& mesh, const Field<double>& p, const Field<double>& q, int i, int j);

/// Everything the prediction phase produces at t^{n+1/2}. Masses and volume
/// fractions are frozen through the whole Lagrangian phase.
struct HalfStepState {
    Field<Vec2> x_half;   // node positions
    Field<Vec2> u_half;   // node velocities
    Field<double> vol_half;
    std::array<Field<double>, kMaxMat> e_half;
    std::array<Field<double>, kMaxMat> p_half;
    Field<double> p_mix_half;
    Field<double> q;     // Q^n, reused by the correction phase
    int floor_count = 0; // energy-floor activations (severe expansions)
};

/// Lagrangian-phase output consumed by the remap engines.
struct LagrangeResult {
    Field<Vec2> u_half; // drives the remap fluxes
    Field<Vec2> u_lag;  // remapped on the dual mesh
    std::array<Field<double>, kMaxMat> e_lag;
    Field<double> vol_lag; // diagnostic only; the remap re-represents volumes
    Field<double> q;
    int floor_count = 0;
};

/// Q^n for every cell (ghosts included) from u^n and the current state.
Field<double> compute_q(const State& s, const MaterialSet& mats, const PseudoViscosityParams& prm);

HalfStepState predict(const State& s, const MaterialSet& mats, double dt,
                      const PseudoViscosityParams& prm);

LagrangeResult correct(const State& s, const MaterialSet& mats, const HalfStepState& half,
                       double dt);

inline LagrangeResult lagrange_step(const State& s, const MaterialSet& mats, double dt,
                                    const PseudoViscosityParams& prm) {
    return correct(s, mats, predict(s, mats, dt, prm), dt);
}

} // namespace hydro
