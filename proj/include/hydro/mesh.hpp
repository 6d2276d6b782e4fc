#pragma once

#include "hydro/errors.hpp"
#include "hydro/vec2.hpp"

namespace hydro {

enum class BoundaryKind { Periodic, Wall };

/// Fixed Eulerian orthogonal grid. Cells are indexed (i, j) with
/// i in [0, nx); node (i, j) sits at the lower-left corner of cell (i, j),
/// so nodes run over [0, nx] x [0, ny].
struct Mesh {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;
    BoundaryKind bc_x = BoundaryKind::Periodic; // left/right pair
    BoundaryKind bc_y = BoundaryKind::Periodic; // bottom/top pair

    Mesh() = default;
    Mesh(int nx_, int ny_, double dx_, double dy_, double x0_ = 0.0, double y0_ = 0.0,
         BoundaryKind bx = BoundaryKind::Periodic, BoundaryKind by = BoundaryKind::Periodic)
        : nx(nx_), ny(ny_), dx(dx_), dy(dy_), x0(x0_), y0(y0_), bc_x(bx), bc_y(by) {
        if (nx < 3 || ny < 3) throw SimError("mesh must be at least 3x3");
        if (dx <= 0.0 || dy <= 0.0) throw SimError("mesh spacing must be positive");
    }

    double cell_volume() const { return dx * dy; }
    Vec2 cell_center(int i, int j) const { return {x0 + (i + 0.5) * dx, y0 + (j + 0.5) * dy}; }
    Vec2 node_pos(int i, int j) const { return {x0 + i * dx, y0 + j * dy}; }

    bool periodic_x() const { return bc_x == BoundaryKind::Periodic; }
    bool periodic_y() const { return bc_y == BoundaryKind::Periodic; }

    /// Characteristic length used by the pseudo-viscosity.
    double char_length() const { return std::sqrt(dx * dy); }
};

} // namespace hydro
