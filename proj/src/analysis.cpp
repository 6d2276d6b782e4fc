#include "hydro/analysis.hpp"

#include "hydro/errors.hpp"
#include "hydro/remap.hpp"

#include <cmath>
#include <numbers>

namespace hydro {
namespace analysis {

double linadv_o1_update(const double a[3][3], double ex, double ey) {
    return a[1][1] * (1.0 - ex) * (1.0 - ey) + a[0][1] * ex * (1.0 - ey) +
           a[1][0] * ey * (1.0 - ex) + a[0][0] * ex * ey;
}

namespace {

// One-node configuration on a unit cell: the top-right node of the centre
// cell moves by (eps, eps), every other node is static.
struct OneNodeCf {
    double dvol_right, dvol_top, dvol_corner;
};

OneNodeCf one_node_cf_fluxes(double eps) {
    const Vec2 moved{eps, eps};
    const Vec2 still{0.0, 0.0};
    OneNodeCf r;
    r.dvol_right = cf_face_flux_x(0.0, 1.0, still, moved).dvol;
    r.dvol_top = cf_face_flux_y(0.0, 1.0, still, moved).dvol;
    r.dvol_corner = cf_corner_flux(moved, 1.0).dvol;
    return r;
}

} // namespace

double single_node_lag_volume(SingleNodeKind kind, double eps) {
    switch (kind) {
    case SingleNodeKind::Exact:
        return 1.0 + eps;
    case SingleNodeKind::AD: {
        const double h = 1.0 + 0.5 * eps;
        return h * h;
    }
    case SingleNodeKind::Direct:
        return 1.0 + eps;
    case SingleNodeKind::DirectCF: {
        const OneNodeCf f = one_node_cf_fluxes(eps);
        return 1.0 + f.dvol_right + f.dvol_top + f.dvol_corner;
    }
    }
    throw SimError("unknown kind");
}

double single_node_corner_mass(SingleNodeKind kind, double eps, double eps_prime) {
    switch (kind) {
    case SingleNodeKind::Exact:
        return eps * eps - 2.0 * eps * eps * eps;
    case SingleNodeKind::AD: {
        const double e = eps, ep = eps_prime;
        return 0.25 * e * e + 0.25 * e * ep - 0.25 * (e * e * e + e * ep * ep + ep * e * e);
    }
    case SingleNodeKind::Direct:
        return 0.0;
    case SingleNodeKind::DirectCF: {
        const OneNodeCf f = one_node_cf_fluxes(eps);
        const double rho_lag = 1.0 / (1.0 + f.dvol_right + f.dvol_top + f.dvol_corner);
        return rho_lag * f.dvol_corner;
    }
    }
    throw SimError("unknown kind");
}

double VortexSpec::alpha0(double dx) const {
    if (kind == VortexKind::Point) return strength / (2.0 * std::numbers::pi * dx * dx);
    return 0.5 * strength;
}

Vec2 VortexSpec::velocity(const Vec2& pos) const {
    const double r2 = pos.x * pos.x + pos.y * pos.y;
    if (kind == VortexKind::Ideal) return 0.5 * strength * Vec2{-pos.y, pos.x};
    // u_theta = sigma0 / (2 pi r), singular at the origin
    if (r2 <= 0.0) return {0.0, 0.0};
    const double f = strength / (2.0 * std::numbers::pi * r2);
    return f * Vec2{-pos.y, pos.x};
}

double discrete_curl(CurlLayout layout, const std::function<Vec2(const Vec2&)>& velocity,
                     double dx) {
    const double h = 0.5 * dx;
    if (layout == CurlLayout::Face) {
        const double circ = dot(velocity({0.0, -h}), {1.0, 0.0}) +
                            dot(velocity({h, 0.0}), {0.0, 1.0}) +
                            dot(velocity({0.0, h}), {-1.0, 0.0}) +
                            dot(velocity({-h, 0.0}), {0.0, -1.0});
        return circ / dx;
    }
    // corner sites of a one-cell square contour, counter-clockwise
    const Vec2 bl{-h, -h}, br{h, -h}, tr{h, h}, tl{-h, h};
    const Vec2 ubl = velocity(bl), ubr = velocity(br), utr = velocity(tr), utl = velocity(tl);
    const double circ = dot(ubl + ubr, {1.0, 0.0}) + dot(ubr + utr, {0.0, 1.0}) +
                        dot(utr + utl, {-1.0, 0.0}) + dot(utl + ubl, {0.0, -1.0});
    return circ / (2.0 * dx);
}

namespace {

Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }

// Evaluate the four contour sites by the quarter-turn symmetry of the vortex:
// u(R x) = R u(x), with u0 given at the reference site.
double curl_from_reference(CurlLayout layout, const Vec2& site0, const Vec2& u0, double dx) {
    Vec2 sites[4], vals[4];
    sites[0] = site0;
    vals[0] = u0;
    for (int k = 1; k < 4; ++k) {
        sites[k] = rot90(sites[k - 1]);
        vals[k] = rot90(vals[k - 1]);
    }
    auto field = [&](const Vec2& x) {
        for (int k = 0; k < 4; ++k)
            if (std::abs(x.x - sites[k].x) < 1e-12 && std::abs(x.y - sites[k].y) < 1e-12)
                return vals[k];
        throw SimError("sample off the contour sites");
    };
    return discrete_curl(layout, field, dx);
}

} // namespace

double one_step_curl_ratio(SchemeKind scheme, VortexKind vortex, double a0dt, double cfl_term) {
    // normalized units alpha0 = 1, dx = 1
    const double dx = 1.0;
    const bool point = vortex == VortexKind::Point;

    CurlLayout layout;
    Vec2 site0, u_before, u_after;
    switch (scheme) {
    case SchemeKind::MYR_o1:
    case SchemeKind::MYR_o2: {
        layout = CurlLayout::Node;
        site0 = {0.5, -0.5}; // bottom-right node, vortex at the cell centre
        u_before = point ? Vec2{1.0, 1.0} : Vec2{0.5, 0.5};
        const double kpt = scheme == SchemeKind::MYR_o1 ? 68.0 / 75.0 : 34.0 / 75.0;
        const double kid = scheme == SchemeKind::MYR_o1 ? 2.0 : 1.0;
        u_after = point ? Vec2{1.0 + kpt * a0dt, 1.0 - kpt * a0dt}
                        : 0.5 * Vec2{1.0 + kid * a0dt, 1.0 - kid * a0dt};
        break;
    }
    case SchemeKind::GLACE: {
        layout = CurlLayout::Cell;
        site0 = {0.5, -0.5}; // bottom-right cell centre, vortex at a node
        u_before = point ? Vec2{1.0, 1.0} : Vec2{0.5, 0.5};
        if (point) {
            const double base = 1.0 - (4.0 / 3.0) * cfl_term;
            u_after = {base - (8.0 / 75.0) * a0dt, base - (76.0 / 75.0) * a0dt};
        } else {
            u_after = 0.5 * Vec2{1.0 + a0dt, 1.0 - a0dt};
        }
        break;
    }
    case SchemeKind::BBC: {
        layout = CurlLayout::Face;
        site0 = {0.0, -0.5}; // bottom face midpoint, vortex at a node
        u_before = point ? Vec2{2.0, 0.0} : Vec2{0.5, 0.0};
        u_after = point ? (2.0 * (1.0 - (48.0 / 25.0) * a0dt)) * Vec2{1.0, 0.0} : u_before;
        break;
    }
    default:
        throw SimError("unknown scheme");
    }

    const double before = curl_from_reference(layout, site0, u_before, dx);
    const double after = curl_from_reference(layout, site0, u_after, dx);
    return after / before;
}

double bbc_vs_glace_crossover(double a0dt) {
    if (!(a0dt > 0.0)) throw SimError("a0dt must be positive");
    return 17.0 / 32.0;
}

} // namespace analysis
} // namespace hydro
