#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydro/analysis.hpp"

#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace hydro;
using namespace hydro::analysis;

TEST_CASE("linadv_o1_update") {
    const double a[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}; // a[di+1][dj+1]
    SUBCASE("zero displacement keeps the centre") {
        CHECK(linadv_o1_update(a, 0.0, 0.0) == doctest::Approx(5.0));
    }
    SUBCASE("full shift lands on the lower-left neighbour") {
        CHECK(linadv_o1_update(a, 1.0, 1.0) == doctest::Approx(1.0));
    }
    SUBCASE("equals the explicit two-pass composition") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> v(-2.0, 2.0);
        std::uniform_real_distribution<double> eps(0.0, 1.0);
        for (int t = 0; t < 1000; ++t) {
            double st[3][3];
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) st[p][q] = v(rng);
            const double ex = eps(rng), ey = eps(rng);
            // X pass on rows j and j-1, then the Y pass on the results
            const double rowj = st[1][1] * (1 - ex) + st[0][1] * ex;
            const double rowjm = st[1][0] * (1 - ex) + st[0][0] * ex;
            const double twopass = rowj * (1 - ey) + rowjm * ey;
            CHECK(linadv_o1_update(st, ex, ey) == doctest::Approx(twopass).epsilon(1e-13));
        }
    }
    SUBCASE("weights are convex for all Courant pairs") {
        for (double ex = 0.0; ex <= 1.0; ex += 0.125)
            for (double ey = 0.0; ey <= 1.0; ey += 0.125) {
                const double w00 = (1 - ex) * (1 - ey), w10 = ex * (1 - ey),
                             w01 = ey * (1 - ex), w11 = ex * ey;
                CHECK(w00 + w10 + w01 + w11 == doctest::Approx(1.0).epsilon(1e-14));
                CHECK(w00 >= 0.0);
                CHECK(w10 >= 0.0);
                CHECK(w01 >= 0.0);
                CHECK(w11 >= 0.0);
            }
    }
}

TEST_CASE("single_node_lag_volume closed forms") {
    CHECK(single_node_lag_volume(SingleNodeKind::AD, 0.2) ==
          doctest::Approx(1.21).epsilon(1e-14));
    CHECK(single_node_lag_volume(SingleNodeKind::AD, 0.1) ==
          doctest::Approx(1.0 + 0.1 + 0.01 / 4.0).epsilon(1e-14));
    for (double eps : {0.05, 0.1, 0.2, 0.3})
        CHECK(single_node_lag_volume(SingleNodeKind::Direct, eps) ==
              doctest::Approx(1.0 + eps).epsilon(1e-15));
}

TEST_CASE("single_node_lag_volume: corner-flux value approaches 1+eps+eps^3 at o(eps^3)") {
    double prev = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double eps = 0.2 / (1 << k);
        const double got = single_node_lag_volume(SingleNodeKind::DirectCF, eps);
        const double resid = std::abs(got - (1.0 + eps + eps * eps * eps));
        if (k > 0) CHECK(prev / resid >= 8.0);
        prev = resid;
    }
}

TEST_CASE("single_node_corner_mass") {
    SUBCASE("direct remap moves nothing through the corner") {
        for (double eps : {0.01, 0.1, 0.3})
            CHECK(single_node_corner_mass(SingleNodeKind::Direct, eps) == 0.0);
    }
    SUBCASE("split-scheme polynomial") {
        CHECK(single_node_corner_mass(SingleNodeKind::AD, 0.2, 0.0) ==
              doctest::Approx(0.01 - 0.002).epsilon(1e-14));
    }
    SUBCASE("exact series value") {
        CHECK(single_node_corner_mass(SingleNodeKind::Exact, 0.1) ==
              doctest::Approx(0.008).epsilon(1e-14));
    }
    SUBCASE("corner-flux value approaches eps^2 - eps^3 at o(eps^3)") {
        double prev = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double eps = 0.2 / (1 << k);
            const double got = single_node_corner_mass(SingleNodeKind::DirectCF, eps);
            const double resid = std::abs(got - (eps * eps - eps * eps * eps));
            if (k > 0) CHECK(prev / resid >= 8.0);
            prev = resid;
        }
    }
    SUBCASE("exact series vs the polygon oracle on the deformed geometry") {
        double prev = 0.0;
        for (int k = 0; k < 4; ++k) {
            const double eps = 0.2 / (1 << k);
            // deformed centre cell, density m/Vol, overlap with the diagonal cell
            const std::vector<Vec2> lagcell = {{0, 0}, {1, 0}, {1 + eps, 1 + eps}, {0, 1}};
            auto clipped = oracles::clip_halfplane(lagcell, {1, 0}, 1.0 + 1.0); // x <= 2
            clipped = oracles::clip_halfplane(clipped, {-1, 0}, -1.0);          // x >= 1
            clipped = oracles::clip_halfplane(clipped, {0, 1}, 2.0);            // y <= 2
            clipped = oracles::clip_halfplane(clipped, {0, -1}, -1.0);          // y >= 1
            const double area = clipped.size() < 3 ? 0.0 : oracles::shoelace_area(clipped);
            const double mass = area / oracles::shoelace_area(lagcell);
            const double resid =
                std::abs(mass - single_node_corner_mass(SingleNodeKind::Exact, eps));
            if (k > 0) CHECK(prev / resid >= 8.0);
            prev = resid;
        }
    }
}

TEST_CASE("discrete_curl on analytic vortices") {
    const double dx = 0.37; // arbitrary spacing
    SUBCASE("solid rotation gives 2 alpha0 = omega0 on every layout") {
        const VortexSpec v{VortexKind::Ideal, 3.0}; // omega0 = 3
        auto field = [&](const Vec2& p) { return v.velocity(p); };
        for (CurlLayout l : {CurlLayout::Node, CurlLayout::Cell, CurlLayout::Face})
            CHECK(discrete_curl(l, field, dx) == doctest::Approx(3.0).epsilon(1e-12));
    }
    SUBCASE("point vortex: 4 alpha0 on node/cell layouts, 8 alpha0 on faces") {
        const VortexSpec v{VortexKind::Point, 5.0};
        const double alpha0 = v.alpha0(dx);
        auto field = [&](const Vec2& p) { return v.velocity(p); };
        CHECK(discrete_curl(CurlLayout::Node, field, dx) ==
              doctest::Approx(4.0 * alpha0).epsilon(1e-12));
        CHECK(discrete_curl(CurlLayout::Cell, field, dx) ==
              doctest::Approx(4.0 * alpha0).epsilon(1e-12));
        CHECK(discrete_curl(CurlLayout::Face, field, dx) ==
              doctest::Approx(8.0 * alpha0).epsilon(1e-12));
    }
    SUBCASE("uniform translation is curl-free") {
        auto field = [](const Vec2&) { return Vec2{2.0, 2.0}; };
        for (CurlLayout l : {CurlLayout::Node, CurlLayout::Cell, CurlLayout::Face})
            CHECK(discrete_curl(l, field, dx) == doctest::Approx(0.0));
    }
    SUBCASE("gradient fields vanish exactly by contour antisymmetry") {
        auto field = [](const Vec2& p) { return Vec2{p.x, p.y}; }; // grad((x^2+y^2)/2)
        for (CurlLayout l : {CurlLayout::Node, CurlLayout::Cell, CurlLayout::Face})
            CHECK(discrete_curl(l, field, dx) == 0.0);
    }
    SUBCASE("linearity in the velocity field") {
        const VortexSpec v{VortexKind::Point, 2.0};
        auto f1 = [&](const Vec2& p) { return v.velocity(p); };
        auto f2 = [&](const Vec2& p) { return 3.0 * v.velocity(p) + Vec2{1.0, -2.0}; };
        for (CurlLayout l : {CurlLayout::Node, CurlLayout::Cell, CurlLayout::Face})
            CHECK(discrete_curl(l, f2, dx) ==
                  doctest::Approx(3.0 * discrete_curl(l, f1, dx)).epsilon(1e-12));
    }
}

TEST_CASE("one_step_curl_ratio reproduces the summary table") {
    const double a0dt = 0.01, cfl = 0.34;
    CHECK(one_step_curl_ratio(SchemeKind::MYR_o1, VortexKind::Point, a0dt, cfl) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one_step_curl_ratio(SchemeKind::MYR_o2, VortexKind::Point, a0dt, cfl) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(one_step_curl_ratio(SchemeKind::GLACE, VortexKind::Point, a0dt, cfl) ==
          doctest::Approx(1.0 - 4.0 / 3.0 * 0.34 - 14.0 / 25.0 * 0.01).epsilon(1e-14));
    CHECK(one_step_curl_ratio(SchemeKind::GLACE, VortexKind::Point, a0dt, cfl) ==
          doctest::Approx(0.541066666666666).epsilon(1e-12));
    CHECK(one_step_curl_ratio(SchemeKind::BBC, VortexKind::Point, a0dt, cfl) ==
          doctest::Approx(1.0 - 48.0 / 25.0 * 0.01).epsilon(1e-14));
    for (SchemeKind s : {SchemeKind::MYR_o1, SchemeKind::MYR_o2, SchemeKind::GLACE,
                         SchemeKind::BBC})
        CHECK(one_step_curl_ratio(s, VortexKind::Ideal, a0dt, cfl) ==
              doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("one_step_curl_ratio: ideal vortex is never diffused, any parameters") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> d(0.0, 0.5);
    for (int t = 0; t < 200; ++t) {
        const double a0dt = d(rng), cfl = d(rng);
        for (SchemeKind s : {SchemeKind::MYR_o1, SchemeKind::MYR_o2, SchemeKind::GLACE,
                             SchemeKind::BBC})
            CHECK(one_step_curl_ratio(s, VortexKind::Ideal, a0dt, cfl) ==
                  doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("bbc_vs_glace_crossover") {
    CHECK(bbc_vs_glace_crossover(0.1) == 17.0 / 32.0);
    CHECK(bbc_vs_glace_crossover(0.5) == 17.0 / 32.0);

    // at the face-staggered stability limit a0dt = 25/48 the comparison flips
    // across the threshold
    const double a0dt = 25.0 / 48.0;
    const double below = 0.34, above = 0.6;
    const double g_below = one_step_curl_ratio(SchemeKind::GLACE, VortexKind::Point, a0dt, below);
    const double b = one_step_curl_ratio(SchemeKind::BBC, VortexKind::Point, a0dt, below);
    CHECK(g_below > b); // the face-staggered scheme diffuses more below 17/32
    const double g_above = one_step_curl_ratio(SchemeKind::GLACE, VortexKind::Point, a0dt, above);
    CHECK(g_above < b); // and less above it
    CHECK(below < bbc_vs_glace_crossover(a0dt));
    CHECK(above > bbc_vs_glace_crossover(a0dt));
}
