#pragma once

#include "hydro/vec2.hpp"

#include <functional>

namespace hydro {
namespace analysis {

/// One first-order split/corner-flux advection update of the centre value of
/// a 3x3 stencil (indexed [di+1][dj+1]) for Courant numbers ex, ey in [0, 1].
/// A convex combination of the centre, left, bottom and lower-left values.
double linadv_o1_update(const double a[3][3], double ex, double ey);

enum class SingleNodeKind { Exact, AD, Direct, DirectCF };

/// Lagrangian volume over dx^2 after displacing one node by (eps, eps) along
/// the diagonal. AD and Direct come out in closed form; DirectCF is built
/// from its own face/corner flux kernels on the one-node configuration.
double single_node_lag_volume(SingleNodeKind kind, double eps);

/// Mass fraction crossing the top-right corner in the same configuration
/// (initial density 1 in the centre cell, 0 elsewhere). eps_prime is the
/// displacement of the next node to the right, used by the split scheme only.
double single_node_corner_mass(SingleNodeKind kind, double eps, double eps_prime = 0.0);

// --- discrete vorticity probes -------------------------------------------

enum class CurlLayout { Node, Cell, Face };
enum class SchemeKind { MYR_o1, MYR_o2, GLACE, BBC };
enum class VortexKind { Point, Ideal };

/// Stationary vortex velocity field. `strength` is the point-vortex moment
/// sigma0 (m^2/s) or the uniform vorticity omega0 (1/s).
struct VortexSpec {
    VortexKind kind = VortexKind::Point;
    double strength = 1.0;

    double alpha0(double dx) const;
    Vec2 velocity(const Vec2& pos) const;
};

/// Circulation / area of a one-cell contour of sampled velocities centred at
/// the origin. Node layout: sites at the cell corners (vortex at a cell
/// centre). Cell layout: same contour on the dual mesh (vortex at a node).
/// Face layout: sites at the four face midpoints (vortex at a node).
double discrete_curl(CurlLayout layout, const std::function<Vec2(const Vec2&)>& velocity,
                     double dx);

/// Ratio of the discrete curls after and before one step, evaluated from the
/// per-scheme closed-form velocity updates at the contour sites.
/// a0dt = alpha0 * dt, cfl_term = (dt/dx) * c0.
double one_step_curl_ratio(SchemeKind scheme, VortexKind vortex, double a0dt, double cfl_term);

/// CFL threshold below which the cell-centred scheme diffuses point-vortex
/// vorticity less than the face-staggered one: 17/32.
double bbc_vs_glace_crossover(double a0dt);

} // namespace analysis
} // namespace hydro
