#include "hydro/config.hpp"

#include "hydro/errors.hpp"

#include <fstream>
#include <sstream>

namespace hydro {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw SimError("config line " + std::to_string(line) + ": " + msg);
}

RemapKind parse_scheme(const std::string& v, int line) {
    if (v == "AD") return RemapKind::AD;
    if (v == "Direct") return RemapKind::Direct;
    if (v == "DirectCF") return RemapKind::DirectCF;
    fail(line, "invalid scheme '" + v + "' (valid: AD, Direct, DirectCF)");
}

CornerScheme parse_corner(const std::string& v, int line) {
    if (v == "upwind") return CornerScheme::Upwind;
    if (v == "avg_min") return CornerScheme::AvgMin;
    if (v == "linear_xy") return CornerScheme::LinearXY;
    if (v == "linear_diag") return CornerScheme::LinearDiag;
    if (v == "multid") return CornerScheme::Multid;
    fail(line, "invalid corner_scheme '" + v +
                   "' (valid: upwind, avg_min, linear_xy, linear_diag, multid)");
}

double parse_num(const std::string& v, int line) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
        return x;
    } catch (const std::exception&) {
        fail(line, "not a number: '" + v + "'");
    }
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig rc;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "case") rc.case_name = val;
        else if (key == "scheme") rc.scheme = parse_scheme(val, lineno);
        else if (key == "face_order") {
            const int o = static_cast<int>(parse_num(val, lineno));
            if (o != 1 && o != 2) fail(lineno, "face_order must be 1 or 2");
            rc.face_order = o;
        } else if (key == "corner_scheme") rc.corner = parse_corner(val, lineno);
        else if (key == "cfl") rc.cfl = parse_num(val, lineno);
        else if (key == "divisor") rc.divisor = static_cast<int>(parse_num(val, lineno));
        else if (key == "t_end") rc.t_end = parse_num(val, lineno);
        else if (key == "max_steps") rc.max_steps = static_cast<int>(parse_num(val, lineno));
        else if (key == "out_dir") rc.out_dir = val;
        else if (key == "output_every") rc.output_every = static_cast<int>(parse_num(val, lineno));
        else if (key == "seed") rc.seed = static_cast<unsigned long>(parse_num(val, lineno));
        else fail(lineno, "unknown key '" + key + "'");
    }
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SimError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

CaseSpec configure_case(const RunConfig& rc) {
    if (rc.case_name.empty()) throw SimError("config is missing 'case'");
    CaseSpec cs = build_case(rc.case_name, rc.divisor);
    cs.scheme = rc.scheme;
    cs.recon.face_order = rc.face_order;
    cs.recon.corner = rc.corner;
    cs.cfl = rc.cfl;
    if (rc.t_end >= 0.0) cs.t_end = rc.t_end;
    if (rc.max_steps > 0) cs.max_steps = rc.max_steps;
    return cs;
}

} // namespace hydro
