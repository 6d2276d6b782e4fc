// Acceptance suite: one check per shipping criterion, each printing a single
// PASS/FAIL line. Run with no arguments for the full set or pass criterion
// numbers to select. Exit code = number of failures.

#include "hydro/analysis.hpp"
#include "hydro/harness.hpp"
#include "hydro/vof.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace hydro;

namespace {

struct Criterion {
    int id;
    std::string label;
    std::function<bool(std::string&)> check;
};

bool leq(double value, double bound, const char* what, std::string& detail) {
    char buf[160];
    std::snprintf(buf, sizeof buf, " %s=%.3e(<=%.1e)", what, value, bound);
    detail += buf;
    return value <= bound;
}

MaterialSet air_only() {
    MaterialSet m;
    m.n = 1;
    m.mat[0] = {"air", EosModel::perfect(1.4)};
    return m;
}

LagrangeResult kinematic(const State& s) {
    LagrangeResult r;
    r.u_half = s.u;
    r.u_lag = s.u;
    for (int a = 0; a < s.nmat; ++a) r.e_lag[a] = s.e[a];
    r.vol_lag = s.vol;
    r.q = Field<double>(s.mesh.nx, s.mesh.ny);
    return r;
}

// --------------------------------------------------------------------------
// 1. first-order equivalence of the split and corner-flux remaps
// --------------------------------------------------------------------------
bool criterion1(std::string& detail) {
    const MaterialSet mats = air_only();
    std::mt19937_64 rng(10101);
    std::uniform_real_distribution<double> val(0.5, 2.0);
    std::uniform_real_distribution<double> vel(-0.42, 0.42);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        Mesh mesh(32, 32, 1.0, 1.0);
        State s = make_state(mesh, 1);
        for (int j = 0; j < 32; ++j)
            for (int i = 0; i < 32; ++i) {
                s.m[0](i, j) = val(rng);
                s.e[0](i, j) = val(rng);
            }
        const Vec2 u{vel(rng), vel(rng)};
        for (int j = 0; j <= 32; ++j)
            for (int i = 0; i <= 32; ++i) s.u(i, j) = u;
        fill_ghosts(s);
        sync_derived(s, mats);
        const LagrangeResult lag = kinematic(s);
        ReconConfig rc;
        rc.face_order = 1;
        rc.corner = CornerScheme::Upwind;
        const State ad = remap_step(s, mats, lag, 1.0, RemapKind::AD, rc);
        const State cf = remap_step(s, mats, lag, 1.0, RemapKind::DirectCF, rc);
        for (int j = 0; j < 32; ++j)
            for (int i = 0; i < 32; ++i) {
                worst = std::max(worst, std::abs(ad.m[0](i, j) - cf.m[0](i, j)));
                worst = std::max(worst, std::abs(ad.e[0](i, j) - cf.e[0](i, j)));
            }
        for (int j = 0; j <= 32; ++j)
            for (int i = 0; i <= 32; ++i) {
                worst = std::max(worst, std::abs(ad.u(i, j).x - cf.u(i, j).x));
                worst = std::max(worst, std::abs(ad.u(i, j).y - cf.u(i, j).y));
            }
    }
    return leq(worst, 1e-13, "max|AD-DirectCF|", detail);
}

// --------------------------------------------------------------------------
// 2. single-node displacement series
// --------------------------------------------------------------------------
bool criterion2(std::string& detail) {
    using namespace analysis;
    bool ok = true;
    double worst_closed = 0.0;
    for (const double eps : {0.05, 0.1, 0.2}) {
        worst_closed = std::max(worst_closed,
                                std::abs(single_node_lag_volume(SingleNodeKind::AD, eps) -
                                         (1.0 + 0.5 * eps) * (1.0 + 0.5 * eps)));
        worst_closed = std::max(worst_closed,
                                std::abs(single_node_lag_volume(SingleNodeKind::Direct, eps) -
                                         (1.0 + eps)));
        if (single_node_corner_mass(SingleNodeKind::Direct, eps) != 0.0) ok = false;
    }
    ok &= leq(worst_closed, 1e-12, "closed-forms", detail);

    auto ratio_ok = [&](const char* what, const std::function<double(double)>& resid) {
        double prev = resid(0.2);
        double worst_ratio = 1e300;
        for (const double eps : {0.1, 0.05, 0.025}) {
            const double r = resid(eps);
            worst_ratio = std::min(worst_ratio, prev / r);
            prev = r;
        }
        char buf[120];
        std::snprintf(buf, sizeof buf, " %s-halving-ratio=%.1f(>=8)", what, worst_ratio);
        detail += buf;
        return worst_ratio >= 8.0;
    };
    ok &= ratio_ok("cf-volume", [](double eps) {
        return std::abs(single_node_lag_volume(SingleNodeKind::DirectCF, eps) -
                        (1.0 + eps + eps * eps * eps));
    });
    ok &= ratio_ok("cf-corner-mass", [](double eps) {
        return std::abs(single_node_corner_mass(SingleNodeKind::DirectCF, eps) -
                        (eps * eps - eps * eps * eps));
    });
    ok &= ratio_ok("exact-vs-polygon", [](double eps) {
        const std::vector<Vec2> lagcell = {{0, 0}, {1, 0}, {1 + eps, 1 + eps}, {0, 1}};
        auto poly = oracles::clip_halfplane(lagcell, {-1, 0}, -1.0);
        poly = oracles::clip_halfplane(poly, {0, -1}, -1.0);
        const double area = poly.size() < 3 ? 0.0 : oracles::shoelace_area(poly);
        const double mass = area / oracles::shoelace_area(lagcell);
        return std::abs(mass - single_node_corner_mass(SingleNodeKind::Exact, eps));
    });
    return ok;
}

// --------------------------------------------------------------------------
// 3. vorticity table, discrete curls, crossover
// --------------------------------------------------------------------------
bool criterion3(std::string& detail) {
    using namespace analysis;
    const double a0dt = 0.01, cfl = 0.34;
    double worst = 0.0;
    auto entry = [&](SchemeKind s, VortexKind v, double expect) {
        worst = std::max(worst, std::abs(one_step_curl_ratio(s, v, a0dt, cfl) - expect));
    };
    entry(SchemeKind::MYR_o1, VortexKind::Point, 1.0);
    entry(SchemeKind::MYR_o2, VortexKind::Point, 1.0);
    entry(SchemeKind::GLACE, VortexKind::Point, 1.0 - 4.0 / 3.0 * cfl - 14.0 / 25.0 * a0dt);
    entry(SchemeKind::BBC, VortexKind::Point, 1.0 - 48.0 / 25.0 * a0dt);
    entry(SchemeKind::MYR_o1, VortexKind::Ideal, 1.0);
    entry(SchemeKind::MYR_o2, VortexKind::Ideal, 1.0);
    entry(SchemeKind::GLACE, VortexKind::Ideal, 1.0);
    entry(SchemeKind::BBC, VortexKind::Ideal, 1.0);
    bool ok = leq(worst, 1e-14, "table", detail);

    const double dx = 0.31;
    const VortexSpec solid{VortexKind::Ideal, 4.0};
    const VortexSpec point{VortexKind::Point, 2.0};
    auto fs = [&](const Vec2& p) { return solid.velocity(p); };
    auto fp = [&](const Vec2& p) { return point.velocity(p); };
    double worst_curl = 0.0;
    for (CurlLayout l : {CurlLayout::Node, CurlLayout::Cell, CurlLayout::Face})
        worst_curl = std::max(worst_curl, std::abs(discrete_curl(l, fs, dx) - 4.0));
    const double a0 = point.alpha0(dx);
    worst_curl = std::max(
        worst_curl, std::abs(discrete_curl(CurlLayout::Node, fp, dx) - 4.0 * a0) / a0);
    worst_curl = std::max(
        worst_curl, std::abs(discrete_curl(CurlLayout::Cell, fp, dx) - 4.0 * a0) / a0);
    worst_curl = std::max(
        worst_curl, std::abs(discrete_curl(CurlLayout::Face, fp, dx) - 8.0 * a0) / a0);
    ok &= leq(worst_curl, 1e-12, "curls", detail);

    ok &= bbc_vs_glace_crossover(0.2) == 17.0 / 32.0;
    detail += " crossover=17/32";
    return ok;
}

// --------------------------------------------------------------------------
// 4. conservation and free-stream preservation
// --------------------------------------------------------------------------
bool criterion4(std::string& detail) {
    bool ok = true;
    double worst_drift = 0.0;
    for (RemapKind k : {RemapKind::AD, RemapKind::Direct, RemapKind::DirectCF}) {
        CaseSpec cs = build_case("mono_advect");
        cs.scheme = k;
        const RunReport rep = run(cs);
        const double m0 = rep.series.front().totals.mass;
        double drift = 0.0;
        for (const StepDiag& d : rep.series)
            drift = std::max(drift, std::abs(d.totals.mass - m0) / m0);
        worst_drift = std::max(worst_drift, drift);
    }
    ok &= leq(worst_drift, 1e-12, "mass-drift", detail);

    double worst_change = 0.0;
    for (RemapKind k : {RemapKind::AD, RemapKind::Direct, RemapKind::DirectCF}) {
        CaseSpec cs = build_case("uniform");
        cs.scheme = k;
        cs.max_steps = 50;
        const RunReport rep = run(cs);
        for (int j = 0; j < cs.ny; ++j)
            for (int i = 0; i < cs.nx; ++i) {
                worst_change = std::max(
                    worst_change, std::abs(rep.final_state.rho_mix(i, j) - 1.0) / 1.0);
                worst_change = std::max(
                    worst_change, std::abs(rep.final_state.e_mix(i, j) - 2.5e5) / 2.5e5);
                worst_change = std::max(
                    worst_change, std::abs(rep.final_state.p_mix(i, j) - 1e5) / 1e5);
            }
        for (int j = 0; j <= cs.ny; ++j)
            for (int i = 0; i <= cs.nx; ++i) {
                worst_change =
                    std::max(worst_change, std::abs(rep.final_state.u(i, j).x - 5.0) / 5.0);
                worst_change =
                    std::max(worst_change, std::abs(rep.final_state.u(i, j).y - 5.0) / 5.0);
            }
    }
    ok &= leq(worst_change, 1e-12, "uniform-50-step-change", detail);
    return ok;
}

// --------------------------------------------------------------------------
// 5. convergence ordering
// --------------------------------------------------------------------------
bool criterion5(std::string& detail) {
    bool ok = true;
    const std::vector<int> meshes = {50, 100, 200};
    const auto res = convergence_study(
        "mono_advect", meshes, {RemapKind::AD, RemapKind::Direct, RemapKind::DirectCF});
    const auto& ad = res[0].rows;
    const auto& direct = res[1].rows;
    const auto& cf = res[2].rows;
    for (const auto& r : res) {
        for (size_t m = 1; m < r.rows.size(); ++m)
            if (!(r.rows[m].err < r.rows[m - 1].err)) ok = false;
    }
    detail += " advect-errs[AD";
    for (const auto& row : ad) detail += " " + std::to_string(row.err);
    detail += "]";
    for (size_t m = 0; m < meshes.size(); ++m) {
        if (!(direct[m].err >= ad[m].err)) ok = false;
        if (!(cf[m].err <= 2.0 * ad[m].err)) ok = false;
    }

    double emin = 1e300, emax = 0.0;
    for (RemapKind k : {RemapKind::AD, RemapKind::Direct, RemapKind::DirectCF}) {
        CaseSpec cs = build_case("mono_rotation");
        cs.scheme = k;
        const RunReport rep = run(cs);
        emin = std::min(emin, rep.l2_rho_vs_initial);
        emax = std::max(emax, rep.l2_rho_vs_initial);
    }
    char buf[100];
    std::snprintf(buf, sizeof buf, " rotation-spread=%.2f(<=3)", emax / emin);
    detail += buf;
    ok &= emax / emin <= 3.0;
    return ok;
}

// --------------------------------------------------------------------------
// 6. two-material bounds and scheme ordering
// --------------------------------------------------------------------------
bool criterion6(std::string& detail) {
    bool ok = true;
    double err_ad = 0.0, err_cf = 0.0, err_direct = 0.0;
    for (RemapKind k : {RemapKind::AD, RemapKind::DirectCF, RemapKind::Direct}) {
        CaseSpec cs = build_case("multimat_advect");
        cs.scheme = k;
        double worst_bound = 0.0;
        const RunReport rep = run(cs, [&](const State& s, const StepDiag&) {
            for (int j = 0; j < s.mesh.ny; ++j)
                for (int i = 0; i < s.mesh.nx; ++i) {
                    const double k0 = s.k[0](i, j), k1 = s.k[1](i, j);
                    worst_bound = std::max({worst_bound, -k0, k0 - 1.0, -k1, k1 - 1.0,
                                            std::abs(k0 + k1 - 1.0)});
                }
        });
        if (k == RemapKind::AD) err_ad = rep.l2_k_vs_initial;
        if (k == RemapKind::DirectCF) err_cf = rep.l2_k_vs_initial;
        if (k == RemapKind::Direct) err_direct = rep.l2_k_vs_initial;
        if (k != RemapKind::Direct) {
            char buf[120];
            std::snprintf(buf, sizeof buf, " %s[preclip=%.2e bounds=%.2e]", scheme_name(k),
                          rep.max_k_violation, worst_bound);
            detail += buf;
            if (rep.max_k_violation > 1e-10) ok = false;
            if (worst_bound > 1e-12) ok = false;
        }
    }
    char buf[140];
    std::snprintf(buf, sizeof buf, " l2k[AD=%.3e CF=%.3e Direct=%.3e]", err_ad, err_cf,
                  err_direct);
    detail += buf;
    ok &= err_direct > err_ad && err_direct > err_cf;
    return ok;
}

// --------------------------------------------------------------------------
// 7. robustness of the shock benchmarks
// --------------------------------------------------------------------------
bool robustness_run(const std::string& name, int nx, int ny, RemapKind scheme,
                    std::string& detail) {
    CaseSpec cs = build_case(name);
    cs.nx = nx;
    cs.ny = ny;
    cs.scheme = scheme;
    int stiff = -1;
    for (int a = 0; a < cs.mats.n; ++a)
        if (cs.mats.mat[a].eos.kind == EosModel::Kind::Stiffened) stiff = a;
    RunReport rep;
    try {
        rep = run(cs);
    } catch (const std::exception& e) {
        detail += std::string(" ") + name + "/" + scheme_name(scheme) + " ABORTED: " + e.what();
        return false;
    }
    double drift = 0.0;
    for (int a = 0; a < cs.mats.n; ++a) {
        const double m0 = rep.series.front().totals.mass_mat[a];
        const double m1 = rep.series.back().totals.mass_mat[a];
        drift = std::max(drift, std::abs(m1 - m0) / m0);
    }
    // settled-state sanity: every pure cell of the stiffened material ends
    // at a positive pressure (transient rarefaction tension is the hazard
    // these runs are meant to survive)
    double min_pure_stiff_p = 1e300;
    if (stiff >= 0) {
        const State& f = rep.final_state;
        for (int j = 0; j < f.mesh.ny; ++j)
            for (int i = 0; i < f.mesh.nx; ++i)
                if (f.k[stiff](i, j) >= 1.0 - kPureTol)
                    min_pure_stiff_p = std::min(min_pure_stiff_p, f.p_mix(i, j));
    }
    char buf[220];
    std::snprintf(buf, sizeof buf, " %s/%s[steps=%d drift=%.1e finalPw=%.2e floors=%d wall=%.0fs]",
                  name.c_str(), scheme_name(scheme), rep.steps, drift,
                  stiff >= 0 ? min_pure_stiff_p : 0.0, rep.energy_floor_count,
                  rep.wall_seconds);
    detail += buf;
    if (drift > 1e-10) return false;
    if (stiff >= 0 && !(min_pure_stiff_p > 0.0)) return false;
    return true;
}

bool criterion7(std::string& detail) {
    bool ok = true;
    for (RemapKind k : {RemapKind::AD, RemapKind::DirectCF}) {
        ok &= robustness_run("haas", 250, 24, k, detail);
        ok &= robustness_run("impact", 80, 40, k, detail);
    }
    return ok;
}

// --------------------------------------------------------------------------
// 8. kernel property suites
// --------------------------------------------------------------------------
bool criterion8(std::string& detail) {
    bool ok = true;

    { // reconstruction boundedness: 1e4 random stencils, scheme kinematics
        std::mt19937_64 rng(808);
        std::uniform_real_distribution<double> val(0.1, 10.0);
        std::uniform_real_distribution<double> vel(-0.45, 0.45);
        int violations = 0;
        for (int t = 0; t < 10000; ++t) {
            Stencil1D st;
            for (int d = 0; d < 3; ++d) st.a[d] = val(rng);
            st.x[0] = -1.0;
            st.x[1] = 0.0;
            st.x[2] = 1.0;
            double udt = vel(rng);
            if (udt == 0.0) udt = 0.2;
            const double v = face_value(2, st, udt > 0 ? 1.0 : -1.0, 1.0, udt);
            const double lo = std::min({st.a[0], st.a[1], st.a[2]});
            const double hi = std::max({st.a[0], st.a[1], st.a[2]});
            if (v < lo - 1e-12 || v > hi + 1e-12) ++violations;
        }
        char buf[80];
        std::snprintf(buf, sizeof buf, " bound-violations=%d/10000", violations);
        detail += buf;
        ok &= violations == 0;
    }

    { // interface placement round trip: 1e3 random (k, n)
        std::mt19937_64 rng(809);
        std::uniform_real_distribution<double> kd(1e-6, 1.0 - 1e-6);
        std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
        double worst = 0.0;
        for (int t = 0; t < 1000; ++t) {
            const double k = kd(rng);
            const Vec2 n{std::cos(ang(rng)), std::sin(ang(rng))};
            const Rect rect{{0, 0}, {1.3, 0.7}};
            const InterfaceLine l = place_interface(k, n, rect);
            worst = std::max(worst, std::abs(clipped_fraction(1.3, 0.7, n, l.d) - k));
        }
        ok &= leq(worst, 1e-12, "roundtrip", detail);
    }

    { // flux partition against the polygon-clipping oracle: 1e3 settings
        std::mt19937_64 rng(810);
        std::uniform_real_distribution<double> kd(0.05, 0.95);
        std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
        std::uniform_real_distribution<double> disp(-0.4, 0.4);
        double worst_sum = 0.0, worst_oracle = 0.0;
        for (int t = 0; t < 1000; ++t) {
            const double dl = disp(rng), dr = disp(rng);
            const Rect rect{{dl, 0.0}, {1.0 + dr, 1.0}};
            const Vec2 n{std::cos(ang(rng)), std::sin(ang(rng))};
            const InterfaceLine line = place_interface(kd(rng), n, rect);
            const double d = dr;
            if (d == 0.0) continue;
            const Rect box{{std::min(1.0, 1.0 + d), 0.0}, {std::max(1.0, 1.0 + d), 1.0}};
            const double dvol = d;
            const double dbox = line.d - dot(n, box.center() - rect.center());
            const double f0 = clipped_fraction(box.width(), box.height(), n, dbox);
            const double dv0 = f0 * dvol, dv1 = dvol - dv0;
            worst_sum = std::max(worst_sum, std::abs(dv0 + dv1 - dvol) / std::abs(dvol));
            const double c_abs = dot(n, rect.center()) + line.d;
            const auto poly = oracles::clip_halfplane(
                oracles::rect_poly(box.lo.x, box.lo.y, box.hi.x, box.hi.y), n, c_abs);
            const double area0 = poly.size() < 3 ? 0.0 : oracles::shoelace_area(poly);
            worst_oracle =
                std::max(worst_oracle, std::abs(std::abs(dv0) - area0 / box.area() *
                                                                     std::abs(dvol)));
        }
        ok &= leq(worst_sum, 1e-12, "partition-sum", detail);
        ok &= leq(worst_oracle, 1e-12, "partition-vs-oracle", detail);
    }
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "first-order equivalence of split and corner-flux remaps", criterion1},
        {2, "single-node displacement series", criterion2},
        {3, "vorticity-diffusion table, discrete curls, crossover", criterion3},
        {4, "conservation and free-stream preservation", criterion4},
        {5, "convergence ordering across schemes", criterion5},
        {6, "two-material bounds and fraction-error ordering", criterion6},
        {7, "shock-benchmark robustness", criterion7},
        {8, "kernel property suites", criterion8},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail += std::string(" EXCEPTION: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %d: %s (%.1fs)%s\n", ok ? "PASS" : "FAIL", c.id,
                    c.label.c_str(), secs, detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    return failures;
}
