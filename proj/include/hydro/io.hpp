#pragma once

#include "hydro/state.hpp"

#include <iosfwd>
#include <string>

namespace hydro {

enum class DumpFormat { Csv, VtkLegacyAscii };

/// Cell-field dump. CSV: header then one row per cell,
///   i,j,x,y,rho,e,p,k0,k1,ux_mean,uy_mean
/// with 17-significant-digit decimals (round-trip exact for binary64).
/// VTK: legacy ASCII STRUCTURED_POINTS with CELL_DATA scalars in the same
/// order. ux/uy are the means of the four node velocities of each cell.
void write_fields(const State& s, const std::string& path, DumpFormat fmt);
void write_fields(const State& s, std::ostream& out, DumpFormat fmt);

/// One conservation-ledger line: step, time, dt, totals and extrema.
void append_diag_line(std::ostream& out, int step, double t, double dt, const Totals& totals,
                      double min_rho, double max_rho, double min_p, double max_p);

} // namespace hydro
