"""2D multi-material Lagrange-remap hydrodynamics kernels."""

from hydro2d._core import (
    bbc_vs_glace_crossover,
    case_list,
    cell_volume,
    cf_corner_flux,
    clipped_fraction,
    eos_pressure,
    limited_gradient_1d,
    linadv_o1_update,
    one_step_curl_ratio,
    place_interface,
    pseudo_viscosity,
    run_case,
    single_node_corner_mass,
    single_node_lag_volume,
    sound_speed,
    van_leer,
)

__all__ = [
    "bbc_vs_glace_crossover",
    "case_list",
    "cell_volume",
    "cf_corner_flux",
    "clipped_fraction",
    "eos_pressure",
    "limited_gradient_1d",
    "linadv_o1_update",
    "one_step_curl_ratio",
    "place_interface",
    "pseudo_viscosity",
    "run_case",
    "single_node_corner_mass",
    "single_node_lag_volume",
    "sound_speed",
    "van_leer",
]
