#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydro/eos.hpp"
#include "hydro/state.hpp"

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace hydro;

TEST_CASE("cell_volume: unit square") {
    CHECK(cell_volume({0, 0}, {1, 0}, {1, 1}, {0, 1}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("cell_volume equals the shoelace oracle on sheared quads") {
    // square with node (1,1) moved to (1.2, 1.2)
    const std::vector<Vec2> quad = {{0, 0}, {1, 0}, {1.2, 1.2}, {0, 1}};
    const double expect = oracles::shoelace_area(quad);
    CHECK(cell_volume(quad[0], quad[1], quad[2], quad[3]) ==
          doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("cell_volume: crossed edges raise a tangled-cell error") {
    CHECK_THROWS_AS(cell_volume({0, 0}, {1, 0}, {0.1, 0.1}, {0, 1}), TangledCellError);
}

TEST_CASE("cell_volume: random convex quads match shoelace, translation invariant") {
    std::mt19937_64 rng(20240901);
    std::uniform_real_distribution<double> pert(-0.3, 0.3);
    std::uniform_real_distribution<double> shift(-50.0, 50.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Vec2> q = {{0 + pert(rng), 0 + pert(rng)},
                               {1 + pert(rng), 0 + pert(rng)},
                               {1 + pert(rng), 1 + pert(rng)},
                               {0 + pert(rng), 1 + pert(rng)}};
        const double area = oracles::shoelace_area(q);
        const double got = cell_volume(q[0], q[1], q[2], q[3]);
        CHECK(got == doctest::Approx(area).epsilon(1e-13));
        const Vec2 t{shift(rng), shift(rng)};
        CHECK(cell_volume(q[0] + t, q[1] + t, q[2] + t, q[3] + t) ==
              doctest::Approx(got).epsilon(1e-13));
    }
}

TEST_CASE("eos_pressure") {
    CHECK(eos_pressure(EosModel::perfect(1.4), 1.0, 2.5e5) ==
          doctest::Approx(1e5).epsilon(1e-14));
    // invert the stiffened form by hand: e = (P + pi) / ((gamma-1) rho)
    const double e = (1e5 + 2.1e9) / 6000.0;
    CHECK(eos_pressure(EosModel::stiffened(7.0, 2.1e9), 1000.0, e) ==
          doctest::Approx(1e5).epsilon(1e-9));
    CHECK(eos_pressure(EosModel::perfect(1.4), 1.0, 0.0) == 0.0);
    CHECK(eos_pressure(EosModel::perfect(1.4), 2.0, 1.0) ==
          eos_pressure(EosModel::stiffened(1.4, 0.0), 2.0, 1.0));
}

TEST_CASE("sound_speed") {
    CHECK(sound_speed(EosModel::perfect(1.4), 1.0, 1e5) ==
          doctest::Approx(std::sqrt(1.4e5)).epsilon(1e-15));
    CHECK(sound_speed(EosModel::perfect(1.4), 1.0, 0.0) == 0.0);
    CHECK(sound_speed(EosModel::stiffened(7.0, 2.1e9), 1000.0, 1e5) ==
          doctest::Approx(std::sqrt(7.0 * (2.1e9 + 1e5) / 1000.0)).epsilon(1e-15));
    CHECK_THROWS_AS(sound_speed(EosModel::perfect(1.4), 1.0, -1e5), UnphysicalStateError);
}

namespace {

State uniform_state(int nx, int ny, double m_per_cell) {
    Mesh mesh(nx, ny, 1.0, 1.0);
    State s = make_state(mesh, 1);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            s.m[0](i, j) = m_per_cell;
            s.e[0](i, j) = 1.0;
        }
    MaterialSet mats;
    mats.mat[0] = {"gas", EosModel::perfect(1.4)};
    fill_ghosts(s);
    sync_derived(s, mats);
    return s;
}

} // namespace

TEST_CASE("nodal_masses: uniform field") {
    State s = uniform_state(5, 5, 4.0);
    const auto mp = nodal_masses(s);
    for (int j = 0; j <= 5; ++j)
        for (int i = 0; i <= 5; ++i) CHECK(mp(i, j) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("nodal_masses: one loaded cell among empty neighbours") {
    State s = uniform_state(5, 5, 0.0);
    s.m[0](2, 2) = 8.0;
    fill_ghost_cells(s.mesh, s.m[0]);
    MaterialSet mats;
    mats.mat[0] = {"gas", EosModel::perfect(1.4)};
    sync_derived(s, mats);
    CHECK(nodal_mass(s, 2, 2) == doctest::Approx(2.0));
    CHECK(nodal_mass(s, 3, 3) == doctest::Approx(2.0));
    CHECK(nodal_mass(s, 4, 4) == doctest::Approx(0.0));
}

TEST_CASE("nodal_masses conserve the total on periodic grids") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mass(0.5, 2.0);
    State s = uniform_state(8, 6, 1.0);
    double total = 0.0;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 8; ++i) {
            s.m[0](i, j) = mass(rng);
            total += s.m[0](i, j);
        }
    fill_ghost_cells(s.mesh, s.m[0]);
    MaterialSet mats;
    mats.mat[0] = {"gas", EosModel::perfect(1.4)};
    sync_derived(s, mats);
    double node_total = 0.0;
    for (int j = 0; j < 6; ++j)
        for (int i = 0; i < 8; ++i) node_total += nodal_mass(s, i, j);
    CHECK(node_total == doctest::Approx(total).epsilon(1e-13));
}
