#include "hydro/io.hpp"

#include "hydro/errors.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace hydro {

namespace {

// fixed 17-significant-digit decimal text, locale-independent
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Vec2 cell_u_mean(const State& s, int i, int j) {
    return 0.25 * (s.u(i, j) + s.u(i + 1, j) + s.u(i, j + 1) + s.u(i + 1, j + 1));
}

void write_csv(const State& s, std::ostream& out) {
    out << "i,j,x,y,rho,e,p,k0,k1,ux_mean,uy_mean\n";
    for (int j = 0; j < s.mesh.ny; ++j)
        for (int i = 0; i < s.mesh.nx; ++i) {
            const Vec2 c = s.mesh.cell_center(i, j);
            const Vec2 um = cell_u_mean(s, i, j);
            const double k0 = s.k[0](i, j);
            const double k1 = s.nmat == 2 ? s.k[1](i, j) : 0.0;
            out << i << ',' << j << ',' << num(c.x) << ',' << num(c.y) << ','
                << num(s.rho_mix(i, j)) << ',' << num(s.e_mix(i, j)) << ','
                << num(s.p_mix(i, j)) << ',' << num(k0) << ',' << num(k1) << ',' << num(um.x)
                << ',' << num(um.y) << '\n';
        }
}

void write_scalar_block(const State& s, std::ostream& out, const std::string& name,
                        double (*get)(const State&, int, int)) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (int j = 0; j < s.mesh.ny; ++j)
        for (int i = 0; i < s.mesh.nx; ++i) out << num(get(s, i, j)) << '\n';
}

void write_vtk(const State& s, std::ostream& out) {
    const Mesh& m = s.mesh;
    out << "# vtk DataFile Version 3.0\n";
    out << "hydro2d fields step " << s.step << " time " << num(s.time) << '\n';
    out << "ASCII\nDATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << m.nx + 1 << ' ' << m.ny + 1 << " 1\n";
    out << "ORIGIN " << num(m.x0) << ' ' << num(m.y0) << " 0\n";
    out << "SPACING " << num(m.dx) << ' ' << num(m.dy) << " 1\n";
    out << "CELL_DATA " << static_cast<std::int64_t>(m.nx) * m.ny << '\n';
    write_scalar_block(s, out, "rho", [](const State& st, int i, int j) { return st.rho_mix(i, j); });
    write_scalar_block(s, out, "e", [](const State& st, int i, int j) { return st.e_mix(i, j); });
    write_scalar_block(s, out, "p", [](const State& st, int i, int j) { return st.p_mix(i, j); });
    write_scalar_block(s, out, "k0", [](const State& st, int i, int j) { return st.k[0](i, j); });
    write_scalar_block(s, out, "k1", [](const State& st, int i, int j) {
        return st.nmat == 2 ? st.k[1](i, j) : 0.0;
    });
    write_scalar_block(s, out, "ux_mean",
                       [](const State& st, int i, int j) { return cell_u_mean(st, i, j).x; });
    write_scalar_block(s, out, "uy_mean",
                       [](const State& st, int i, int j) { return cell_u_mean(st, i, j).y; });
}

} // namespace

void write_fields(const State& s, std::ostream& out, DumpFormat fmt) {
    if (fmt == DumpFormat::Csv)
        write_csv(s, out);
    else
        write_vtk(s, out);
}

void write_fields(const State& s, const std::string& path, DumpFormat fmt) {
    std::ofstream out(path);
    if (!out) throw SimError("cannot write: " + path);
    write_fields(s, out, fmt);
    if (!out.good()) throw SimError("write failed: " + path);
}

void append_diag_line(std::ostream& out, int step, double t, double dt, const Totals& totals,
                      double min_rho, double max_rho, double min_p, double max_p) {
    out << step << ' ' << num(t) << ' ' << num(dt) << " mass=" << num(totals.mass)
        << " mass0=" << num(totals.mass_mat[0]) << " mass1=" << num(totals.mass_mat[1])
        << " momx=" << num(totals.momentum.x) << " momy=" << num(totals.momentum.y)
        << " eint=" << num(totals.internal_energy) << " rho=[" << num(min_rho) << ','
        << num(max_rho) << "] p=[" << num(min_p) << ',' << num(max_p) << "]\n";
}

} // namespace hydro
