#pragma once

#include <array>

namespace fsibench {

/// Cubic a3 y^3 + a2 y^2 + a1 y + a0.
struct Cubic {
    double a3, a2, a1, a0;

    double eval(double y) const { return ((a3 * y + a2) * y + a1) * y + a0; }
    double sum() const { return a3 + a2 + a1 + a0; }  // = eval(1)
};

/// Magnitudes of the three complex roots, sorted descending.
/// Computed from the eigenvalues of the companion matrix.
/// Throws std::domain_error when a3 == 0.
std::array<double, 3> cubic_root_magnitudes(const Cubic& c);

/// Real roots only (imaginary part below a relative tolerance), unsorted.
/// Convenience for checks that need signed root locations.
std::array<double, 3> cubic_roots_real_parts(const Cubic& c, std::array<bool, 3>& is_real);

enum class RootClass { Stable, Marginal, Unstable };

/// Classify by the largest root magnitude against the unit circle with an
/// explicit marginal band: |max| inside [1-band, 1+band] -> Marginal.
RootClass classify_roots(const Cubic& c, double band = 1e-9);

}  // namespace fsibench
