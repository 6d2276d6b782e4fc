#include "hydro/analysis.hpp"
#include "hydro/config.hpp"
#include "hydro/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace hydro;

int usage() {
    std::cout << "usage: hydro2d <command> [args]\n"
                 "  run <config>               run a case from a key = value config file\n"
                 "  converge <case> <schemes>  mesh-refinement study (schemes: comma list)\n"
                 "  analyze <table|singlenode|linadv>\n"
                 "  case-list                  list the built-in cases\n";
    return 2;
}

int cmd_case_list() {
    for (const auto& n : case_list()) std::cout << n << '\n';
    return 0;
}

int cmd_run(const std::string& path) {
    const RunConfig rc = load_config(path);
    CaseSpec cs = configure_case(rc);

    std::string out_dir = rc.out_dir;
    if (const char* env = std::getenv("HYDRO_OUT_DIR")) out_dir = env;
    std::filesystem::create_directories(out_dir);
    std::ofstream diag(out_dir + "/diag.log");

    int next_dump = rc.output_every;
    const StepHook hook = [&](const State& s, const StepDiag& d) {
        append_diag_line(diag, d.step, d.t, d.dt, d.totals, d.min_rho, d.max_rho, d.min_p,
                         d.max_p);
        if (rc.output_every > 0 && d.step >= next_dump) {
            char name[64];
            std::snprintf(name, sizeof name, "/fields_%06d.csv", d.step);
            write_fields(s, out_dir + name, DumpFormat::Csv);
            next_dump += rc.output_every;
        }
    };

    const RunReport rep = run(cs, hook);
    write_fields(rep.final_state, out_dir + "/final.csv", DumpFormat::Csv);
    write_fields(rep.final_state, out_dir + "/final.vtk", DumpFormat::VtkLegacyAscii);

    const Totals& t0 = rep.series.front().totals;
    const Totals& t1 = rep.series.back().totals;
    std::cout << "case " << cs.name << " scheme " << scheme_name(cs.scheme) << " mesh " << cs.nx
              << "x" << cs.ny << "\n";
    std::cout << "steps " << rep.steps << "  t " << rep.final_state.time << "  wall "
              << rep.wall_seconds << " s\n";
    std::printf("mass drift %.3e  internal-energy drift %.3e\n",
                std::abs(t1.mass - t0.mass) / t0.mass,
                std::abs(t1.internal_energy - t0.internal_energy) /
                    std::max(1e-300, std::abs(t0.internal_energy)));
    if (cs.mats.n == 2)
        std::printf("max pre-clip fraction violation %.3e\n", rep.max_k_violation);
    std::printf("L2(rho) vs initial %.6e\n", rep.l2_rho_vs_initial);
    if (cs.mats.n == 2) std::printf("L2(k) vs initial %.6e\n", rep.l2_k_vs_initial);
    std::cout << "wrote " << out_dir << "/final.csv, final.vtk, diag.log\n";
    return 0;
}

std::vector<RemapKind> parse_schemes(const std::string& list) {
    std::vector<RemapKind> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "AD") out.push_back(RemapKind::AD);
        else if (item == "Direct") out.push_back(RemapKind::Direct);
        else if (item == "DirectCF") out.push_back(RemapKind::DirectCF);
        else throw SimError("unknown scheme '" + item + "' (valid: AD, Direct, DirectCF)");
    }
    if (out.empty()) throw SimError("no schemes given");
    return out;
}

int cmd_converge(const std::string& case_name, const std::string& schemes_arg) {
    const auto schemes = parse_schemes(schemes_arg);
    const std::vector<int> meshes = {50, 100, 200};
    const auto results = convergence_study(case_name, meshes, schemes);
    std::printf("%-10s", "mesh");
    for (const auto& r : results) std::printf("  %-12s", scheme_name(r.scheme));
    std::printf("\n");
    for (size_t row = 0; row < meshes.size(); ++row) {
        std::printf("%-10d", meshes[row]);
        for (const auto& r : results) std::printf("  %-12.5e", r.rows[row].err);
        std::printf("\n");
    }
    std::printf("%-10s", "slope");
    for (const auto& r : results) std::printf("  %-12.3f", r.slope);
    std::printf("\n");
    return 0;
}

int cmd_analyze(const std::string& what) {
    using namespace hydro::analysis;
    if (what == "table") {
        const double a0dt = 0.01, cfl = 0.34;
        std::printf("one-step vorticity ratio at alpha0*dt=%.2f, (dt/dx)c0=%.2f\n", a0dt, cfl);
        std::printf("%-16s  %-12s  %-12s\n", "scheme", "point", "ideal");
        const SchemeKind schemes[] = {SchemeKind::MYR_o1, SchemeKind::MYR_o2, SchemeKind::GLACE,
                                      SchemeKind::BBC};
        const char* names[] = {"staggered o1", "staggered o2", "cell-centred", "face-staggered"};
        for (int i = 0; i < 4; ++i)
            std::printf("%-16s  %-12.8f  %-12.8f\n", names[i],
                        one_step_curl_ratio(schemes[i], VortexKind::Point, a0dt, cfl),
                        one_step_curl_ratio(schemes[i], VortexKind::Ideal, a0dt, cfl));
        std::printf("crossover CFL (cell-centred vs face-staggered): %.5f\n",
                    bbc_vs_glace_crossover(a0dt));
        return 0;
    }
    if (what == "singlenode") {
        std::printf("single-node diagonal displacement, Vol_lag/dx^2 and corner mass\n");
        std::printf("%-8s  %-12s %-12s %-12s %-12s\n", "eps", "exact", "AD", "Direct",
                    "DirectCF");
        for (const double eps : {0.05, 0.1, 0.2}) {
            std::printf("V %-6.2f  %-12.8f %-12.8f %-12.8f %-12.8f\n", eps,
                        single_node_lag_volume(SingleNodeKind::Exact, eps),
                        single_node_lag_volume(SingleNodeKind::AD, eps),
                        single_node_lag_volume(SingleNodeKind::Direct, eps),
                        single_node_lag_volume(SingleNodeKind::DirectCF, eps));
            std::printf("m %-6.2f  %-12.8f %-12.8f %-12.8f %-12.8f\n", eps,
                        single_node_corner_mass(SingleNodeKind::Exact, eps),
                        single_node_corner_mass(SingleNodeKind::AD, eps, 0.0),
                        single_node_corner_mass(SingleNodeKind::Direct, eps),
                        single_node_corner_mass(SingleNodeKind::DirectCF, eps));
        }
        return 0;
    }
    if (what == "linadv") {
        const double a[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
        std::printf("first-order one-step update of the centre value, a=1..9 stencil\n");
        for (const double ex : {0.0, 0.3, 1.0})
            for (const double ey : {0.0, 0.7, 1.0})
                std::printf("ex=%.1f ey=%.1f -> %.6f\n", ex, ey,
                            analysis::linadv_o1_update(a, ex, ey));
        return 0;
    }
    std::cout << "error: unknown analyze target '" << what
              << "' (valid: table, singlenode, linadv)\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        if (argc < 2) return usage();
        const std::string cmd = argv[1];
        if (cmd == "case-list") return cmd_case_list();
        if (cmd == "run") {
            if (argc != 3) return usage();
            return cmd_run(argv[2]);
        }
        if (cmd == "converge") {
            if (argc != 4) return usage();
            return cmd_converge(argv[2], argv[3]);
        }
        if (cmd == "analyze") {
            if (argc != 3) return usage();
            return cmd_analyze(argv[2]);
        }
        return usage();
    } catch (const std::exception& e) {
        std::cout << "error: " << e.what() << '\n';
        return 1;
    }
}
