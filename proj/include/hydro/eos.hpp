#pragma once

#include "hydro/errors.hpp"

#include <cmath>

namespace hydro {

/// Equation of state. Perfect gas P = (gamma-1) rho e, or stiffened gas
/// P = (gamma-1) rho e - pi (pi = 0 recovers the perfect gas).
struct EosModel {
    enum class Kind { Perfect, Stiffened };
    Kind kind = Kind::Perfect;
    double gamma = 1.4;
    double pi = 0.0; // Pa, background stiffness

    static EosModel perfect(double gamma) { return {Kind::Perfect, gamma, 0.0}; }
    static EosModel stiffened(double gamma, double pi) { return {Kind::Stiffened, gamma, pi}; }
};

inline double eos_pressure(const EosModel& eos, double rho, double e) {
    double p = (eos.gamma - 1.0) * rho * e;
    if (eos.kind == EosModel::Kind::Stiffened) p -= eos.pi;
    return p;
}

/// Negative pressure is returned by eos_pressure and only the sound speed
/// rejects it, once gamma*(P+pi)/rho turns negative.
inline double sound_speed(const EosModel& eos, double rho, double p) {
    const double pi = (eos.kind == EosModel::Kind::Stiffened) ? eos.pi : 0.0;
    const double c2 = eos.gamma * (p + pi) / rho;
    if (!(c2 >= 0.0)) throw UnphysicalStateError("unphysical state: gamma*(P+pi)/rho < 0");
    return std::sqrt(c2);
}

} // namespace hydro
