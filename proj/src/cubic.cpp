#include "fsibench/cubic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace fsibench {

namespace {

std::array<std::complex<double>, 3> companion_roots(const Cubic& c) {
    if (c.a3 == 0.0) throw std::domain_error("degenerate cubic: leading coefficient is zero");
    const double c2 = c.a2 / c.a3;
    const double c1 = c.a1 / c.a3;
    const double c0 = c.a0 / c.a3;
    Eigen::Matrix3d comp;
    comp << 0.0, 0.0, -c0,
            1.0, 0.0, -c1,
            0.0, 1.0, -c2;
    Eigen::EigenSolver<Eigen::Matrix3d> es(comp, /*computeEigenvectors=*/false);
    std::array<std::complex<double>, 3> r;
    for (int k = 0; k < 3; ++k) r[static_cast<size_t>(k)] = es.eigenvalues()(k);
    return r;
}

}  // namespace

std::array<double, 3> cubic_root_magnitudes(const Cubic& c) {
    const auto roots = companion_roots(c);
    std::array<double, 3> mags{std::abs(roots[0]), std::abs(roots[1]), std::abs(roots[2])};
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    return mags;
}

std::array<double, 3> cubic_roots_real_parts(const Cubic& c, std::array<bool, 3>& is_real) {
    const auto roots = companion_roots(c);
    std::array<double, 3> re{};
    for (size_t k = 0; k < 3; ++k) {
        re[k] = roots[k].real();
        const double scale = std::max(1.0, std::abs(roots[k]));
        is_real[k] = std::abs(roots[k].imag()) <= 1e-9 * scale;
    }
    return re;
}

RootClass classify_roots(const Cubic& c, double band) {
    const double max_mag = cubic_root_magnitudes(c)[0];
    if (max_mag < 1.0 - band) return RootClass::Stable;
    if (max_mag > 1.0 + band) return RootClass::Unstable;
    return RootClass::Marginal;
}

}  // namespace fsibench
