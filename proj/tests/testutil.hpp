#pragma once

#include <cmath>
#include <numbers>

#include "lpns2d/operators.hpp"
#include "lpns2d/random_fields.hpp"

namespace lpns2d::test {

inline constexpr double kPi = std::numbers::pi;

// Fills a scalar field from a callable f(x1, x2).
template <typename F>
SpectralFieldd sample_scalar(const Gridd& grid, F&& fn) {
    PhysicalFieldd p(grid, 1);
    for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i)
            p.comp(0)(i, j) = fn(grid.coord(i), grid.coord(j));
    return to_spectral(p);
}

template <typename F1, typename F2>
SpectralFieldd sample_vector(const Gridd& grid, F1&& f1, F2&& f2) {
    PhysicalFieldd p(grid, 2);
    for (int j = 0; j < grid.n; ++j) {
        for (int i = 0; i < grid.n; ++i) {
            p.comp(0)(i, j) = f1(grid.coord(i), grid.coord(j));
            p.comp(1)(i, j) = f2(grid.coord(i), grid.coord(j));
        }
    }
    return to_spectral(p);
}

inline double rel_l2_error(const SpectralFieldd& a, const SpectralFieldd& b) {
    const double ref = l2_norm_spectral(b);
    return ref > 0 ? l2_norm_spectral(a - b) / ref : l2_norm_spectral(a - b);
}

inline double max_abs(const PhysicalFieldd& f) {
    double m = 0;
    for (int c = 0; c < f.components; ++c) m = std::max(m, f.comp(c).abs().maxCoeff());
    return m;
}

// Taylor-Green vortex on the 2*pi box: an eigenfield of the Laplacian, so the
// exact Navier-Stokes solution is amp * e^{-2 mu t} (cos x1 sin x2, -sin x1 cos x2)
// with pressure -amp^2/4 (cos 2x1 + cos 2x2) e^{-4 mu t}.
inline SpectralFieldd taylor_green(const Gridd& grid, double amp = 1.0) {
    auto u = sample_vector(
        grid, [amp](double x, double y) { return amp * std::cos(x) * std::sin(y); },
        [amp](double x, double y) { return -amp * std::sin(x) * std::cos(y); });
    u.solenoidal = true;
    return u;
}

}  // namespace lpns2d::test
