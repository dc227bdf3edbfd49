#pragma once

#include "fsibench/cubic.hpp"

namespace fsibench {

/// Outcome of the four Jury conditions for a cubic. All roots lie strictly
/// inside the unit disk iff all four hold.
struct JuryVerdict {
    bool cond1;  // Q(1) > 0
    bool cond2;  // Q(-1) < 0
    bool cond3;  // |a3| > |a0|
    bool cond4;  // |a0^2 - a3^2| > |a0 a2 - a1 a3|
    bool stable; // cond1 && cond2 && cond3 && cond4
};

/// Jury stability test for a cubic. The polynomial is normalized to a
/// positive leading coefficient first (roots are unchanged).
/// Throws std::domain_error when a3 == 0.
JuryVerdict jury_test(const Cubic& c);

}  // namespace fsibench
