#pragma once

#include "hydro/harness.hpp"

#include <string>

namespace hydro {

/// Flat key = value run configuration ('#' comments, unknown keys rejected).
struct RunConfig {
    std::string case_name;
    RemapKind scheme = RemapKind::DirectCF;
    int face_order = 2;
    CornerScheme corner = CornerScheme::LinearDiag;
    double cfl = 0.3;
    int divisor = 1;
    double t_end = -1.0; // < 0: keep the case default
    int max_steps = 0;
    std::string out_dir = "out";
    int output_every = 0; // 0: final dump only
    unsigned long seed = 0;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Case spec with the config's overrides applied.
CaseSpec configure_case(const RunConfig& rc);

} // namespace hydro
