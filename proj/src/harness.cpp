#include "hydro/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace hydro {

Mesh CaseSpec::make_mesh() const {
    return Mesh(nx, ny, lx / nx, ly / ny, x0, y0, bc_x, bc_y);
}

const char* scheme_name(RemapKind k) {
    switch (k) {
    case RemapKind::AD: return "AD";
    case RemapKind::Direct: return "Direct";
    case RemapKind::DirectCF: return "DirectCF";
    }
    return "?";
}

std::vector<std::string> case_list() {
    return {"uniform",         "mono_advect", "mono_rotation", "multimat_advect",
            "water_air_rotation", "haas",     "impact"};
}

namespace {

EosModel air_eos() { return EosModel::perfect(1.4); }
EosModel water_eos() { return EosModel::stiffened(7.0, 2.1e9); }

double energy_from_p(const EosModel& eos, double rho, double p) {
    const double pi = eos.kind == EosModel::Kind::Stiffened ? eos.pi : 0.0;
    return (p + pi) / ((eos.gamma - 1.0) * rho);
}

int scaled(int n, int divisor) { return std::max(8, n / std::max(1, divisor)); }

} // namespace

CaseSpec build_case(const std::string& name, int divisor) {
    CaseSpec cs;
    cs.name = name;
    if (name == "uniform") {
        cs.nx = cs.ny = scaled(50, divisor);
        cs.mats.n = 1;
        cs.mats.mat[0] = {"air", air_eos()};
        cs.regions = {{.shape = Region::Shape::All, .mat = 0, .rho = 1.0, .p = 1e5,
                       .u = {5.0, 5.0}}};
        cs.t_end = 1.0;
        cs.max_steps = 50;
        return cs;
    }
    if (name == "mono_advect" || name == "multimat_advect") {
        const bool multi = name == "multimat_advect";
        cs.nx = cs.ny = scaled(100, divisor);
        cs.mats.n = multi ? 2 : 1;
        cs.mats.mat[0] = {"air", air_eos()};
        if (multi) cs.mats.mat[1] = {"air2", air_eos()};
        const double rho_bg = multi ? 1.29 : 0.1;
        const double rho_sq = multi ? 1.29 : 10.0;
        cs.regions = {{.shape = Region::Shape::All, .mat = 0, .rho = rho_bg, .p = 1e5},
                      {.shape = Region::Shape::Rectangle,
                       .rect = {{0.2, 0.2}, {0.4, 0.4}},
                       .mat = multi ? 1 : 0,
                       .rho = rho_sq,
                       .p = 1e5}};
        cs.imposed = ImposedVelocity::Constant;
        cs.u_const = {5.0, 5.0};
        cs.flip_time = 0.06;
        cs.t_end = 0.12;
        return cs;
    }
    if (name == "mono_rotation") {
        cs.nx = cs.ny = scaled(100, divisor);
        cs.mats.n = 1;
        cs.mats.mat[0] = {"air", air_eos()};
        cs.regions = {{.shape = Region::Shape::All, .mat = 0, .rho = 0.1, .p = 1e5},
                      {.shape = Region::Shape::Rectangle,
                       .rect = {{0.4, 0.65}, {0.6, 0.85}},
                       .mat = 0,
                       .rho = 10.0,
                       .p = 1e5}};
        cs.imposed = ImposedVelocity::Rotation;
        cs.rot_center = {0.5, 0.5};
        cs.rot_omega = 2.0 * 3.14159265358979323846;
        cs.t_end = 1.0;
        return cs;
    }
    if (name == "water_air_rotation") {
        cs.nx = cs.ny = scaled(400, divisor);
        cs.lx = cs.ly = 4.0;
        cs.mats.n = 2;
        cs.mats.mat[0] = {"air", air_eos()};
        cs.mats.mat[1] = {"water", water_eos()};
        cs.regions = {{.shape = Region::Shape::All, .mat = 0, .rho = 1.29, .p = 1e5},
                      {.shape = Region::Shape::Rectangle,
                       .rect = {{1.6, 2.5}, {2.4, 3.3}},
                       .mat = 1,
                       .rho = 1000.0,
                       .p = 1e5}};
        cs.imposed = ImposedVelocity::Rotation;
        cs.rot_center = {2.0, 2.0};
        cs.rot_omega = 2.0 * 3.14159265358979323846 * 1e3;
        cs.t_end = 1e-3;
        return cs;
    }
    if (name == "haas") {
        cs.nx = scaled(1000, divisor);
        cs.ny = scaled(90, divisor);
        cs.lx = 10.0;
        cs.ly = 0.09;
        cs.bc_x = cs.bc_y = BoundaryKind::Wall;
        cs.mats.n = 2;
        cs.mats.mat[0] = {"air", air_eos()};
        cs.mats.mat[1] = {"helium", EosModel::perfect(1.66)};
        cs.regions = {{.shape = Region::Shape::All, .mat = 0, .rho = 1.0, .p = 1e5},
                      {.shape = Region::Shape::HalfPlaneX,
                       .xsplit = 0.8,
                       .mat = 0,
                       .rho = 1.376363,
                       .p = 1.5698e5,
                       .u = {124.824, 0.0}},
                      {.shape = Region::Shape::Circle,
                       .center = {1.0, 0.045},
                       .radius = 0.04,
                       .mat = 1,
                       .rho = 0.18187,
                       .p = 1e5}};
        cs.t_end = 1e-3;
        return cs;
    }
    if (name == "impact") {
        cs.nx = scaled(320, divisor);
        cs.ny = scaled(160, divisor);
        cs.lx = 0.10;
        cs.ly = 0.05;
        cs.bc_x = cs.bc_y = BoundaryKind::Wall;
        cs.mats.n = 2;
        cs.mats.mat[0] = {"air", air_eos()};
        cs.mats.mat[1] = {"water", water_eos()};
        cs.regions = {{.shape = Region::Shape::All, .mat = 0, .rho = 1.29, .p = 1e5,
                       .u = {-1000.0, 0.0}},
                      {.shape = Region::Shape::Rectangle,
                       .rect = {{0.0, 0.0}, {0.01, 0.05}},
                       .mat = 1,
                       .rho = 1000.0,
                       .p = 1e5,
                       .u = {0.0, 0.0}},
                      {.shape = Region::Shape::Circle,
                       .center = {0.03, 0.025},
                       .radius = 0.01,
                       .mat = 1,
                       .rho = 1000.0,
                       .p = 1e5,
                       .u = {-1000.0, 0.0}}};
        cs.t_end = 6e-3;
        return cs;
    }
    throw SimError("unknown case: " + name);
}

namespace {

// Fraction of cell (i, j) covered by a region; circles are subsampled 16x16.
double coverage(const Region& r, const Mesh& mesh, int i, int j) {
    const Vec2 lo = mesh.node_pos(i, j);
    const Vec2 hi = mesh.node_pos(i + 1, j + 1);
    switch (r.shape) {
    case Region::Shape::All:
        return 1.0;
    case Region::Shape::HalfPlaneX:
        return std::clamp((r.xsplit - lo.x) / mesh.dx, 0.0, 1.0);
    case Region::Shape::Rectangle: {
        const double ox = std::max(0.0, std::min(hi.x, r.rect.hi.x) - std::max(lo.x, r.rect.lo.x));
        const double oy = std::max(0.0, std::min(hi.y, r.rect.hi.y) - std::max(lo.y, r.rect.lo.y));
        return (ox / mesh.dx) * (oy / mesh.dy);
    }
    case Region::Shape::Circle: {
        int inside = 0;
        for (int q = 0; q < 16; ++q)
            for (int p = 0; p < 16; ++p) {
                const double x = lo.x + (p + 0.5) / 16.0 * mesh.dx;
                const double y = lo.y + (q + 0.5) / 16.0 * mesh.dy;
                const double ddx = x - r.center.x, ddy = y - r.center.y;
                if (ddx * ddx + ddy * ddy <= r.radius * r.radius) ++inside;
            }
        return inside / 256.0;
    }
    }
    return 0.0;
}

bool contains(const Region& r, const Vec2& p) {
    switch (r.shape) {
    case Region::Shape::All: return true;
    case Region::Shape::HalfPlaneX: return p.x < r.xsplit;
    case Region::Shape::Rectangle:
        return p.x >= r.rect.lo.x && p.x <= r.rect.hi.x && p.y >= r.rect.lo.y &&
               p.y <= r.rect.hi.y;
    case Region::Shape::Circle: {
        const double dx = p.x - r.center.x, dy = p.y - r.center.y;
        return dx * dx + dy * dy <= r.radius * r.radius;
    }
    }
    return false;
}

void impose_velocity(State& s, const CaseSpec& cs, double t) {
    if (cs.imposed == ImposedVelocity::Constant) {
        const double sgn = (cs.flip_time > 0.0 && t >= cs.flip_time) ? -1.0 : 1.0;
        for (int j = 0; j <= s.mesh.ny; ++j)
            for (int i = 0; i <= s.mesh.nx; ++i) s.u(i, j) = sgn * cs.u_const;
    } else {
        for (int j = 0; j <= s.mesh.ny; ++j)
            for (int i = 0; i <= s.mesh.nx; ++i) {
                const Vec2 p = s.mesh.node_pos(i, j);
                s.u(i, j) = cs.rot_omega * Vec2{-(p.y - cs.rot_center.y), p.x - cs.rot_center.x};
            }
    }
    fill_ghost_nodes(s.mesh, s.u);
}

} // namespace

State init_case(const CaseSpec& cs) {
    const Mesh mesh = cs.make_mesh();
    State s = make_state(mesh, cs.mats.n);
    const double cv = mesh.cell_volume();

    for (int j = 0; j < mesh.ny; ++j)
        for (int i = 0; i < mesh.nx; ++i) {
            double karr[kMaxMat] = {0.0, 0.0};
            double marr[kMaxMat] = {0.0, 0.0};
            double mearr[kMaxMat] = {0.0, 0.0};
            const Vec2 cen = mesh.cell_center(i, j);
            for (size_t r = 0; r < cs.regions.size(); ++r) {
                const Region& reg = cs.regions[r];
                double f;
                if (r == 0) {
                    f = 1.0;
                } else {
                    // same-material regions paint whole cells by centroid
                    // (state boundaries stay sharp); other-material regions
                    // use exact/subsampled overlap fractions
                    const bool frac = cs.mats.n == 2 && karr[reg.mat] < 1.0;
                    f = frac ? coverage(reg, mesh, i, j) : (contains(reg, cen) ? 1.0 : 0.0);
                }
                if (f <= 0.0) continue;
                const double e = energy_from_p(cs.mats.mat[reg.mat].eos, reg.rho, reg.p);
                for (int a = 0; a < cs.mats.n; ++a) {
                    karr[a] *= (1.0 - f);
                    marr[a] *= (1.0 - f);
                    mearr[a] *= (1.0 - f);
                }
                karr[reg.mat] += f;
                marr[reg.mat] += f * reg.rho * cv;
                mearr[reg.mat] += f * reg.rho * e * cv;
            }
            for (int a = 0; a < cs.mats.n; ++a) {
                // snap trace fractions to pure
                if (karr[a] < kPureTol) {
                    const int b = 1 - a;
                    karr[b] += karr[a];
                    marr[b] += marr[a];
                    mearr[b] += mearr[a];
                    karr[a] = marr[a] = mearr[a] = 0.0;
                }
            }
            for (int a = 0; a < cs.mats.n; ++a) {
                s.k[a](i, j) = karr[a];
                s.m[a](i, j) = marr[a];
                s.e[a](i, j) = marr[a] > 0.0 ? mearr[a] / marr[a] : 0.0;
            }
        }

    for (int j = 0; j <= mesh.ny; ++j)
        for (int i = 0; i <= mesh.nx; ++i) {
            const Vec2 p = mesh.node_pos(i, j);
            Vec2 u;
            for (const Region& reg : cs.regions)
                if (contains(reg, p)) u = reg.u;
            s.u(i, j) = u;
        }

    fill_ghosts(s);
    sync_derived(s, cs.mats);
    update_interface_normals(s);
    if (cs.imposed != ImposedVelocity::None) impose_velocity(s, cs, 0.0);
    return s;
}

double cfl_dt(const State& s, const MaterialSet& mats, double cfl) {
    double wmax = 0.0;
    for (int j = 0; j < s.mesh.ny; ++j)
        for (int i = 0; i < s.mesh.nx; ++i) {
            double c = 0.0;
            for (int a = 0; a < s.nmat; ++a) {
                const double ka = s.k[a](i, j);
                if (ka < kThermoTol) continue; // passive sliver
                const double rho_a = s.m[a](i, j) / (ka * s.mesh.cell_volume());
                const double pa = eos_pressure(mats.mat[a].eos, rho_a, s.e[a](i, j));
                c += ka * sound_speed(mats.mat[a].eos, rho_a, pa);
            }
            double umax = 0.0;
            for (int dj = 0; dj <= 1; ++dj)
                for (int di = 0; di <= 1; ++di)
                    umax = std::max(umax, norm(s.u(i + di, j + dj)));
            wmax = std::max(wmax, c + umax);
        }
    if (!(wmax > 0.0) || !std::isfinite(wmax)) throw SimError("non-finite wave speed");
    return cfl * std::min(s.mesh.dx, s.mesh.dy) / wmax;
}

double l2_error(const Field<double>& a, const Field<double>& b, const Mesh& mesh) {
    if (a.nx() != b.nx() || a.ny() != b.ny() || a.nx() != mesh.nx || a.ny() != mesh.ny)
        throw SimError("field/mesh size mismatch");
    double s = 0.0;
    for (int j = 0; j < mesh.ny; ++j)
        for (int i = 0; i < mesh.nx; ++i) {
            const double d = a(i, j) - b(i, j);
            s += d * d;
        }
    return std::sqrt(s * mesh.dx * mesh.dy);
}

namespace {

double kinematic_dt(const State& s, double cfl) {
    double umax = 0.0;
    for (int j = 0; j <= s.mesh.ny; ++j)
        for (int i = 0; i <= s.mesh.nx; ++i) umax = std::max(umax, norm(s.u(i, j)));
    if (!(umax > 0.0)) throw SimError("imposed velocity field is zero");
    return cfl * std::min(s.mesh.dx, s.mesh.dy) / umax;
}

LagrangeResult kinematic_lagrange(const State& s) {
    LagrangeResult r;
    r.u_half = s.u;
    r.u_lag = s.u;
    for (int a = 0; a < s.nmat; ++a) r.e_lag[a] = s.e[a];
    r.vol_lag = s.vol;
    r.q = Field<double>(s.mesh.nx, s.mesh.ny);
    return r;
}

void nan_scan(const State& s, int step) {
    for (int j = 0; j < s.mesh.ny; ++j)
        for (int i = 0; i < s.mesh.nx; ++i) {
            if (!std::isfinite(s.m_mix(i, j)) || !std::isfinite(s.e_mix(i, j)) ||
                !std::isfinite(s.p_mix(i, j)))
                throw SimError("non-finite cell state", i, j, step);
        }
    for (int j = 0; j <= s.mesh.ny; ++j)
        for (int i = 0; i <= s.mesh.nx; ++i)
            if (!std::isfinite(s.u(i, j).x) || !std::isfinite(s.u(i, j).y))
                throw SimError("non-finite velocity", i, j, step);
}

StepDiag make_diag(const State& s, double dt) {
    StepDiag d;
    d.step = s.step;
    d.t = s.time;
    d.dt = dt;
    d.totals = compute_totals(s);
    d.min_rho = d.max_rho = s.rho_mix(0, 0);
    d.min_p = d.max_p = s.p_mix(0, 0);
    for (int j = 0; j < s.mesh.ny; ++j)
        for (int i = 0; i < s.mesh.nx; ++i) {
            d.min_rho = std::min(d.min_rho, s.rho_mix(i, j));
            d.max_rho = std::max(d.max_rho, s.rho_mix(i, j));
            d.min_p = std::min(d.min_p, s.p_mix(i, j));
            d.max_p = std::max(d.max_p, s.p_mix(i, j));
        }
    return d;
}

} // namespace

RunReport run(const CaseSpec& cs, const StepHook& hook) {
    const auto t0 = std::chrono::steady_clock::now();
    RunReport rep;
    rep.spec = cs;
    State s = init_case(cs);
    rep.initial_state = s;
    rep.series.push_back(make_diag(s, 0.0));

    const bool kinematic = cs.imposed != ImposedVelocity::None;
    RemapDiag rdiag;
    while (s.time < cs.t_end - 1e-15 * std::max(1.0, cs.t_end)) {
        if (cs.max_steps > 0 && s.step >= cs.max_steps) break;
        double dt = kinematic ? kinematic_dt(s, cs.cfl) : cfl_dt(s, cs.mats, cs.cfl);
        if (kinematic && cs.flip_time > 0.0 && s.time < cs.flip_time)
            dt = std::min(dt, cs.flip_time - s.time);
        dt = std::min(dt, cs.t_end - s.time);

        LagrangeResult lag;
        try {
            lag = kinematic ? kinematic_lagrange(s) : lagrange_step(s, cs.mats, dt, cs.pv);
            rep.energy_floor_count += lag.floor_count;
            const bool x_first = s.step % 2 == 0; // X-Y on odd iterations (1-based)
            s = remap_step(s, cs.mats, lag, dt, cs.scheme, cs.recon, x_first, !kinematic,
                           &rdiag);
        } catch (SimError& err) {
            throw SimError(std::string(err.what()) + " [" + cs.name + " step " +
                           std::to_string(s.step) + "]");
        }
        if (kinematic) impose_velocity(s, cs, s.time);
        nan_scan(s, s.step);
        rep.series.push_back(make_diag(s, dt));
        if (hook) hook(s, rep.series.back());
    }

    rep.final_state = s;
    rep.steps = s.step;
    rep.max_k_violation = rdiag.max_k_violation;
    rep.k_clip_count = rdiag.k_clip_count;
    rep.mass_fix_count = rdiag.mass_fix_count;
    rep.l2_rho_vs_initial = l2_error(rep.final_state.rho_mix, rep.initial_state.rho_mix, s.mesh);
    if (cs.mats.n == 2)
        rep.l2_k_vs_initial = l2_error(rep.final_state.k[1], rep.initial_state.k[1], s.mesh);
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::vector<ConvergenceResult> convergence_study(const std::string& case_name,
                                                 const std::vector<int>& meshes,
                                                 const std::vector<RemapKind>& schemes) {
    std::vector<ConvergenceResult> out;
    for (const RemapKind scheme : schemes) {
        ConvergenceResult res;
        res.scheme = scheme;
        for (const int n : meshes) {
            CaseSpec cs = build_case(case_name);
            cs.nx = cs.ny = n;
            cs.scheme = scheme;
            const RunReport rep = run(cs);
            const double err =
                cs.mats.n == 2 ? rep.l2_k_vs_initial : rep.l2_rho_vs_initial;
            res.rows.push_back({n, err});
        }
        // least-squares slope of log err against log dx
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const int m = static_cast<int>(res.rows.size());
        for (const auto& row : res.rows) {
            const double x = std::log(1.0 / row.n);
            const double y = std::log(std::max(row.err, 1e-300));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        res.slope = m > 1 ? (m * sxy - sx * sy) / (m * sxx - sx * sx) : 0.0;
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace hydro
