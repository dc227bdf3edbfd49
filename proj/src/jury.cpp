#include "fsibench/jury.hpp"

#include <cmath>
#include <stdexcept>

namespace fsibench {

JuryVerdict jury_test(const Cubic& c) {
    if (c.a3 == 0.0) throw std::domain_error("degenerate cubic: leading coefficient is zero");
    double a3 = c.a3, a2 = c.a2, a1 = c.a1, a0 = c.a0;
    if (a3 < 0.0) { a3 = -a3; a2 = -a2; a1 = -a1; a0 = -a0; }

    JuryVerdict v{};
    v.cond1 = (a3 + a2 + a1 + a0) > 0.0;
    v.cond2 = (-a3 + a2 - a1 + a0) < 0.0;
    v.cond3 = std::abs(a3) > std::abs(a0);
    v.cond4 = std::abs(a0 * a0 - a3 * a3) > std::abs(a0 * a2 - a1 * a3);
    v.stable = v.cond1 && v.cond2 && v.cond3 && v.cond4;
    return v;
}

}  // namespace fsibench
