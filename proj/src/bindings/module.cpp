#include "hydro/analysis.hpp"
#include "hydro/config.hpp"
#include "hydro/harness.hpp"
#include "hydro/vof.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hydro;

namespace {

EosModel make_eos(const std::string& kind, double gamma, double pi) {
    if (kind == "perfect") return EosModel::perfect(gamma);
    if (kind == "stiffened") return EosModel::stiffened(gamma, pi);
    throw SimError("unknown EOS kind: " + kind);
}

RemapKind scheme_from_name(const std::string& s) {
    if (s == "AD") return RemapKind::AD;
    if (s == "Direct") return RemapKind::Direct;
    if (s == "DirectCF") return RemapKind::DirectCF;
    throw SimError("unknown scheme: " + s);
}

analysis::SingleNodeKind single_node_kind(const std::string& s) {
    if (s == "Exact") return analysis::SingleNodeKind::Exact;
    if (s == "AD") return analysis::SingleNodeKind::AD;
    if (s == "Direct") return analysis::SingleNodeKind::Direct;
    if (s == "DirectCF") return analysis::SingleNodeKind::DirectCF;
    throw SimError("unknown kind: " + s);
}

analysis::SchemeKind curl_scheme(const std::string& s) {
    if (s == "MYR_o1") return analysis::SchemeKind::MYR_o1;
    if (s == "MYR_o2") return analysis::SchemeKind::MYR_o2;
    if (s == "GLACE") return analysis::SchemeKind::GLACE;
    if (s == "BBC") return analysis::SchemeKind::BBC;
    throw SimError("unknown scheme: " + s);
}

analysis::VortexKind vortex_kind(const std::string& s) {
    if (s == "point") return analysis::VortexKind::Point;
    if (s == "ideal") return analysis::VortexKind::Ideal;
    throw SimError("unknown vortex kind: " + s);
}

py::dict run_case(const std::string& name, int divisor, const std::string& scheme,
                  int face_order, const std::string& corner, double cfl, double t_end,
                  int max_steps) {
    RunConfig rc;
    rc.case_name = name;
    rc.divisor = divisor;
    rc.scheme = scheme_from_name(scheme);
    rc.face_order = face_order;
    rc.cfl = cfl;
    rc.t_end = t_end;
    rc.max_steps = max_steps;
    if (corner == "upwind") rc.corner = CornerScheme::Upwind;
    else if (corner == "avg_min") rc.corner = CornerScheme::AvgMin;
    else if (corner == "linear_xy") rc.corner = CornerScheme::LinearXY;
    else if (corner == "linear_diag") rc.corner = CornerScheme::LinearDiag;
    else if (corner == "multid") rc.corner = CornerScheme::Multid;
    else throw SimError("unknown corner scheme: " + corner);

    const CaseSpec cs = configure_case(rc);
    const RunReport rep = run(cs);

    const Totals& t0 = rep.series.front().totals;
    const Totals& t1 = rep.series.back().totals;
    py::dict d;
    d["case"] = cs.name;
    d["scheme"] = scheme;
    d["nx"] = cs.nx;
    d["ny"] = cs.ny;
    d["steps"] = rep.steps;
    d["time"] = rep.final_state.time;
    d["mass_initial"] = t0.mass;
    d["mass_final"] = t1.mass;
    d["mass_drift"] = std::abs(t1.mass - t0.mass) / t0.mass;
    d["internal_energy_drift"] =
        std::abs(t1.internal_energy - t0.internal_energy) /
        std::max(1e-300, std::abs(t0.internal_energy));
    d["l2_rho_vs_initial"] = rep.l2_rho_vs_initial;
    d["l2_k_vs_initial"] = rep.l2_k_vs_initial;
    d["max_k_violation"] = rep.max_k_violation;
    d["min_p"] = rep.series.back().min_p;
    d["max_p"] = rep.series.back().max_p;
    d["wall_seconds"] = rep.wall_seconds;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "2D multi-material Lagrange-remap hydrodynamics kernels";

    m.def("eos_pressure",
          [](const std::string& kind, double gamma, double pi, double rho, double e) {
              return eos_pressure(make_eos(kind, gamma, pi), rho, e);
          },
          py::arg("kind"), py::arg("gamma"), py::arg("pi"), py::arg("rho"), py::arg("e"));
    m.def("sound_speed",
          [](const std::string& kind, double gamma, double pi, double rho, double p) {
              return sound_speed(make_eos(kind, gamma, pi), rho, p);
          });
    m.def("cell_volume", [](std::pair<double, double> p00, std::pair<double, double> p10,
                            std::pair<double, double> p11, std::pair<double, double> p01) {
        return cell_volume({p00.first, p00.second}, {p10.first, p10.second},
                           {p11.first, p11.second}, {p01.first, p01.second});
    });
    m.def("van_leer", &van_leer);
    m.def("limited_gradient_1d", &limited_gradient_1d);
    m.def("pseudo_viscosity",
          [](double rho, double c, double div_u, double a1, double a2, double L) {
              return pseudo_viscosity(rho, c, div_u, {a1, a2}, L);
          });
    m.def("clipped_fraction", [](double w, double h, double nx, double ny, double d) {
        return clipped_fraction(w, h, {nx, ny}, d);
    });
    m.def("place_interface",
          [](double frac, double nx, double ny, double w, double h) {
              const InterfaceLine l =
                  place_interface(frac, {nx, ny}, Rect{{0.0, 0.0}, {w, h}});
              return l.d;
          },
          "interface offset from the proxy-rectangle centre");
    m.def("cf_corner_flux", [](double ux, double uy, double dt) {
        const CornerFlux f = cf_corner_flux({ux, uy}, dt);
        return py::make_tuple(f.dvol, f.sx, f.sy);
    });
    m.def("linadv_o1_update",
          [](const std::vector<std::vector<double>>& a, double ex, double ey) {
              if (a.size() != 3 || a[0].size() != 3) throw SimError("need a 3x3 stencil");
              double arr[3][3];
              for (int i = 0; i < 3; ++i)
                  for (int j = 0; j < 3; ++j) arr[i][j] = a[i][j];
              return analysis::linadv_o1_update(arr, ex, ey);
          });
    m.def("single_node_lag_volume", [](const std::string& kind, double eps) {
        return analysis::single_node_lag_volume(single_node_kind(kind), eps);
    });
    m.def("single_node_corner_mass",
          [](const std::string& kind, double eps, double eps_prime) {
              return analysis::single_node_corner_mass(single_node_kind(kind), eps, eps_prime);
          },
          py::arg("kind"), py::arg("eps"), py::arg("eps_prime") = 0.0);
    m.def("one_step_curl_ratio",
          [](const std::string& scheme, const std::string& vortex, double a0dt, double cfl) {
              return analysis::one_step_curl_ratio(curl_scheme(scheme), vortex_kind(vortex),
                                                   a0dt, cfl);
          });
    m.def("bbc_vs_glace_crossover", &analysis::bbc_vs_glace_crossover);
    m.def("case_list", &case_list);
    m.def("run_case", &run_case, py::arg("name"), py::arg("divisor") = 1,
          py::arg("scheme") = "DirectCF", py::arg("face_order") = 2,
          py::arg("corner") = "linear_diag", py::arg("cfl") = 0.3, py::arg("t_end") = -1.0,
          py::arg("max_steps") = 0);
}
