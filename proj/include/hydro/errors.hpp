#pragma once

#include <stdexcept>
#include <string>

namespace hydro {

/// Runtime failure of the scheme (tangled cell, CFL violation, negative
/// mass, unphysical EOS state, ...). Carries the offending cell/node index
/// and the step at which it happened so drivers can report a location.
class SimError : public std::runtime_error {
public:
    SimError(std::string what, int i = -1, int j = -1, int step = -1)
        : std::runtime_error(format(what, i, j, step)), i_(i), j_(j), step_(step) {}

    int i() const { return i_; }
    int j() const { return j_; }
    int step() const { return step_; }

private:
    static std::string format(const std::string& what, int i, int j, int step) {
        std::string s = what;
        if (i >= 0 || j >= 0) s += " at cell (" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (step >= 0) s += " step " + std::to_string(step);
        return s;
    }
    int i_, j_, step_;
};

struct TangledCellError : SimError { using SimError::SimError; };
struct UnphysicalStateError : SimError { using SimError::SimError; };
struct NegativeMassError : SimError { using SimError::SimError; };
struct CflViolationError : SimError { using SimError::SimError; };
struct IsolatedMixedCellError : SimError { using SimError::SimError; };

} // namespace hydro
