#pragma once

#include "lpns2d/interpolate.hpp"
#include "lpns2d/operators.hpp"

namespace lpns2d {

template <typename Scalar>
struct AdvectResult {
    SpectralField<Scalar> field;
    Scalar max_displacement_cells = 0;
    bool cfl_advisory = false;  // displacement exceeded 2 cells somewhere
};

// Semi-Lagrangian step for d_t a + u . grad a = 0 over one dt with a frozen
// velocity: characteristics traced back by RK2 (midpoint), a interpolated
// bicubically at the departure points. The update preserves the incoming
// range up to interpolation overshoot (clamped), and the grid mass of a is
// restored exactly by a uniform correction (divergence-free transport
// conserves the integral; interpolation does not, the correction is O(h^4)).
template <typename Scalar>
AdvectResult<Scalar> advect_scalar(const SpectralField<Scalar>& a, const SpectralField<Scalar>& u,
                                   Scalar dt) {
    if (!a.is_scalar()) throw DimensionError("advect_scalar: a must be scalar");
    if (u.components != 2) throw DimensionError("advect_scalar: u must be a vector");
    require_solenoidal(u, Scalar(1e-6));

    const Grid<Scalar>& g = a.grid;
    PhysicalField<Scalar> pa = to_physical(a);
    PhysicalField<Scalar> pu = to_physical(u);
    BicubicSampler<Scalar> sample_a(pa);
    BicubicSampler<Scalar> sample_u(pu);

    const Scalar a_min = pa.comp(0).minCoeff();
    const Scalar a_max = pa.comp(0).maxCoeff();
    const Scalar mass0 = pa.comp(0).sum();

    AdvectResult<Scalar> out;
    PhysicalField<Scalar> np(g, 1);
    Scalar worst = 0;
    for (int j = 0; j < g.n; ++j) {
        const Scalar x2 = g.coord(j);
        for (int i = 0; i < g.n; ++i) {
            const Scalar x1 = g.coord(i);
            // midpoint backtrace
            const Scalar m1 = x1 - Scalar(0.5) * dt * pu.comp(0)(i, j);
            const Scalar m2 = x2 - Scalar(0.5) * dt * pu.comp(1)(i, j);
            const Scalar d1 = dt * sample_u(0, m1, m2);
            const Scalar d2 = dt * sample_u(1, m1, m2);
            worst = std::max(worst, std::hypot(d1, d2));
            Scalar val = sample_a(0, x1 - d1, x2 - d2);
            val = std::min(a_max, std::max(a_min, val));
            np.comp(0)(i, j) = val;
        }
    }
    // uniform mass restoration
    const Scalar n2 = Scalar(g.n) * Scalar(g.n);
    np.comp(0) += (mass0 - np.comp(0).sum()) / n2;

    out.max_displacement_cells = worst / g.spacing();
    out.cfl_advisory = out.max_displacement_cells > Scalar(2);
    // no truncation here: the clamp and the mass fix are exact statements
    // about the physical samples, and every spectral product downstream
    // dealiases its own output
    out.field = to_spectral(np);
    return out;
}

}  // namespace lpns2d
