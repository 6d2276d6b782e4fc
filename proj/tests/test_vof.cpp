#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hydro/errors.hpp"
#include "hydro/field.hpp"
#include "hydro/vof.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

using namespace hydro;

namespace {

Vec2 random_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979323846);
    const double a = ang(rng);
    return {std::cos(a), std::sin(a)};
}

} // namespace

TEST_CASE("clipped_fraction matches the polygon-clipping oracle") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> side(0.2, 3.0);
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    for (int t = 0; t < 2000; ++t) {
        const double w = side(rng), h = side(rng);
        const Vec2 n = random_unit(rng);
        const double smax = 0.5 * (std::abs(n.x) * w + std::abs(n.y) * h);
        const double d = off(rng) * smax;
        const double want = oracles::clipped_rect_area(0, 0, w, h, n, d) / (w * h);
        CHECK(clipped_fraction(w, h, n, d) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("place_interface: axis-aligned and diagonal half splits") {
    const Rect unit{{0, 0}, {1, 1}};
    SUBCASE("k=0.5, n=(1,0) puts the line through the centre") {
        const InterfaceLine l = place_interface(0.5, {1, 0}, unit);
        CHECK(l.d == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("k=0.5, diagonal normal") {
        const double s = 1.0 / std::sqrt(2.0);
        const InterfaceLine l = place_interface(0.5, {s, s}, unit);
        CHECK(l.d == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("k=0.125, diagonal normal gives the corner triangle") {
        const double s = 1.0 / std::sqrt(2.0);
        const InterfaceLine l = place_interface(0.125, {s, s}, unit);
        const double area = oracles::clipped_rect_area(0, 0, 1, 1, {s, s}, l.d);
        CHECK(area == doctest::Approx(0.125).epsilon(1e-12));
        // triangle with both legs 0.5: line offset -S + t with t = sqrt(2*A*B*k)
        CHECK(l.d == doctest::Approx(0.5 / std::sqrt(2.0) - 1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("place_interface round-trips the fraction for random inputs") {
    std::mt19937_64 rng(20240902);
    std::uniform_real_distribution<double> kdist(1e-6, 1.0 - 1e-6);
    std::uniform_real_distribution<double> side(0.3, 2.5);
    for (int t = 0; t < 1000; ++t) {
        const double w = side(rng), h = side(rng);
        const double k = kdist(rng);
        const Vec2 n = random_unit(rng);
        const InterfaceLine l = place_interface(k, n, Rect{{0, 0}, {w, h}});
        CHECK(clipped_fraction(w, h, n, l.d) == doctest::Approx(k).epsilon(1e-12));
        const double poly = oracles::clipped_rect_area(0, 0, w, h, n, l.d) / (w * h);
        CHECK(poly == doctest::Approx(k).epsilon(1e-11));
    }
}

TEST_CASE("place_interface is monotone in the fraction") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        const Vec2 n = random_unit(rng);
        double last = -1e300;
        for (double k = 0.05; k < 1.0; k += 0.05) {
            const double d = place_interface(k, n, Rect{{0, 0}, {1, 1}}).d;
            CHECK(d > last);
            last = d;
        }
    }
}

namespace {

Field<double> fraction_field(int n, const std::function<double(int, int)>& f) {
    Field<double> k(n, n);
    for (int j = -kGhost; j < n + kGhost; ++j)
        for (int i = -kGhost; i < n + kGhost; ++i) k(i, j) = f(i, j);
    return k;
}

} // namespace

TEST_CASE("youngs_normal: axis-aligned jumps") {
    // material 1 fills the right half; fraction ramps over the middle column
    const auto k1 = fraction_field(7, [](int i, int) {
        if (i < 3) return 0.0;
        if (i > 3) return 1.0;
        return 0.5;
    });
    const Vec2 n = youngs_normal(k1, 3, 3, 1.0, 1.0);
    CHECK(n.x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(n.y == doctest::Approx(0.0).epsilon(1e-14));

    const auto k1y = fraction_field(7, [](int, int j) {
        if (j < 3) return 1.0;
        if (j > 3) return 0.0;
        return 0.5;
    });
    const Vec2 ny = youngs_normal(k1y, 3, 3, 1.0, 1.0);
    CHECK(ny.x == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(ny.y == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("youngs_normal: diagonal half-space matches the stencil oracle") {
    // linear ramp along i+j: the gradient direction is exactly (1,1)/sqrt(2)
    const auto k1 = fraction_field(9, [](int i, int j) {
        return std::clamp(0.125 * (i + j - 4), 0.0, 1.0);
    });
    const Vec2 n = youngs_normal(k1, 4, 4, 1.0, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(n.x == doctest::Approx(s).epsilon(1e-12));
    CHECK(n.y == doctest::Approx(s).epsilon(1e-12));

    // brute-force 1-2-1 stencil gradient
    auto col = [&](int ii) { return k1(ii, 3) + 2 * k1(ii, 4) + k1(ii, 5); };
    auto row = [&](int jj) { return k1(3, jj) + 2 * k1(4, jj) + k1(5, jj); };
    const double gx = (col(5) - col(3)) / 8.0;
    const double gy = (row(5) - row(3)) / 8.0;
    const double g = std::hypot(gx, gy);
    CHECK(n.x == doctest::Approx(gx / g).epsilon(1e-13));
    CHECK(n.y == doctest::Approx(gy / g).epsilon(1e-13));
}

TEST_CASE("youngs_normal: zero gradient raises the isolated-cell error") {
    const auto k1 = fraction_field(7, [](int i, int j) { return i == 3 && j == 3 ? 0.5 : 0.0; });
    // the 1-2-1 gradient of a single-cell blob centred on the stencil is zero
    CHECK_THROWS_AS(youngs_normal(k1, 3, 3, 1.0, 1.0), IsolatedMixedCellError);
}
