#pragma once

#include "hydro/lagrange.hpp"
#include "hydro/remap.hpp"
#include "hydro/state.hpp"

#include <functional>
#include <string>
#include <vector>

namespace hydro {

enum class ImposedVelocity { None, Constant, Rotation };

/// Initial-data region. Regions paint the domain in order; later entries
/// override the earlier ones where they overlap.
struct Region {
    enum class Shape { All, HalfPlaneX, Rectangle, Circle };
    Shape shape = Shape::All;
    double xsplit = 0.0; // HalfPlaneX: covers x < xsplit
    Rect rect;
    Vec2 center;
    double radius = 0.0;
    int mat = 0;
    double rho = 1.0;
    double p = 1e5;
    Vec2 u;
};

struct CaseSpec {
    std::string name;
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0, lx = 1.0, ly = 1.0;
    BoundaryKind bc_x = BoundaryKind::Periodic;
    BoundaryKind bc_y = BoundaryKind::Periodic;
    MaterialSet mats;
    std::vector<Region> regions;
    double t_end = 0.0;
    double cfl = 0.3;
    int max_steps = 0; // 0 = until t_end
    RemapKind scheme = RemapKind::DirectCF;
    ReconConfig recon;
    PseudoViscosityParams pv;

    // kinematic (imposed-velocity) transport cases
    ImposedVelocity imposed = ImposedVelocity::None;
    Vec2 u_const;            // Constant: +u before flip_time, -u after
    double flip_time = -1.0; // < 0: no flip
    Vec2 rot_center;
    double rot_omega = 0.0;

    Mesh make_mesh() const;
};

/// Known benchmark cases by name; divisor shrinks the mesh for desk runs.
CaseSpec build_case(const std::string& name, int divisor = 1);
std::vector<std::string> case_list();

/// Initial state (regions rasterized; multimaterial cells get exact overlap
/// fractions, circles by 16x16 subsampling).
State init_case(const CaseSpec& cs);

/// Acoustic time step dt = cfl * min(dx, dy) / max_c (c + |u|).
double cfl_dt(const State& s, const MaterialSet& mats, double cfl);

/// sqrt( sum (a-b)^2 dx dy ) over real cells.
double l2_error(const Field<double>& a, const Field<double>& b, const Mesh& mesh);

struct StepDiag {
    int step = 0;
    double t = 0.0, dt = 0.0;
    Totals totals;
    double min_rho = 0.0, max_rho = 0.0;
    double min_p = 0.0, max_p = 0.0;
};

struct RunReport {
    CaseSpec spec;
    std::vector<StepDiag> series;
    State initial_state;
    State final_state;
    int steps = 0;
    double wall_seconds = 0.0;
    double max_k_violation = 0.0;
    int k_clip_count = 0;
    int mass_fix_count = 0;
    int energy_floor_count = 0;
    double l2_rho_vs_initial = 0.0;
    double l2_k_vs_initial = 0.0;
};

using StepHook = std::function<void(const State&, const StepDiag&)>;

RunReport run(const CaseSpec& cs, const StepHook& hook = {});

struct ConvergenceRow {
    int n = 0;
    double err = 0.0;
};

struct ConvergenceResult {
    RemapKind scheme{};
    std::vector<ConvergenceRow> rows;
    double slope = 0.0; // least-squares slope of log(err) vs log(dx)
};

/// Run a case across several mesh sizes and schemes; the error is the L2
/// distance of the final density (fraction for two-material cases) from the
/// initial field.
std::vector<ConvergenceResult> convergence_study(const std::string& case_name,
                                                 const std::vector<int>& meshes,
                                                 const std::vector<RemapKind>& schemes);

const char* scheme_name(RemapKind k);

} // namespace hydro
