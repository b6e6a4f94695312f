#pragma once

#include "lpns2d/viscosity.hpp"

namespace lpns2d {

// Operator bundle for one density snapshot: caches the physical samples of a
// and mu_tilde(a) - mu so that the forcing, the pressure right side and the
// momentum right side can share them. All products are dealiased.
template <typename Scalar>
struct InhomOperators {
    Grid<Scalar> grid;
    Scalar mu = 1;
    Scalar a_sup = 0;
    PhysicalField<Scalar> a_phys;
    PhysicalField<Scalar> mu_minus_phys;  // mu_tilde(a) - mu samples

    InhomOperators(const SpectralField<Scalar>& a, const ViscosityLaw<Scalar>& law,
                   Scalar vacuum_margin = Scalar(0.1))
        : grid(a.grid), mu(law.mu0()), a_phys(to_physical(a)) {
        const Scalar one_plus_min = Scalar(1) + a_phys.comp(0).minCoeff();
        if (!(one_plus_min >= vacuum_margin))
            throw StateError("inhom operators: vacuum breach, min(1+a) = " +
                             std::to_string(static_cast<double>(one_plus_min)));
        a_sup = a_phys.comp(0).abs().maxCoeff();
        mu_minus_phys = PhysicalField<Scalar>(grid, 1);
        for (int j = 0; j < grid.n; ++j)
            for (int i = 0; i < grid.n; ++i)
                mu_minus_phys.comp(0)(i, j) = law.mu_tilde(a_phys.comp(0)(i, j)) - mu;
    }

    // pointwise product with a sample array, dealiased
    SpectralField<Scalar> weighted(const RealArray<Scalar>& w,
                                   const SpectralField<Scalar>& f) const {
        PhysicalField<Scalar> pf = to_physical(f);
        for (int c = 0; c < f.components; ++c) pf.comp(c) *= w;
        SpectralField<Scalar> out = to_spectral(pf);
        dealias_in_place(out);
        return out;
    }

    SpectralField<Scalar> times_a(const SpectralField<Scalar>& f) const {
        return weighted(a_phys.comp(0), f);
    }
    SpectralField<Scalar> times_one_plus_a(const SpectralField<Scalar>& f) const {
        SpectralField<Scalar> out = times_a(f);
        out += dealias(f);
        return out;
    }

    // (1 + a) div((mu_tilde(a) - mu) M(g)) for a solenoidal g
    SpectralField<Scalar> variable_stress_div(const SpectralField<Scalar>& g) const {
        auto m = symmetric_gradient(g);  // (M11, M12, M22)
        SpectralField<Scalar> s11 = weighted(mu_minus_phys.comp(0), m[0]);
        SpectralField<Scalar> s12 = weighted(mu_minus_phys.comp(0), m[1]);
        SpectralField<Scalar> s22 = weighted(mu_minus_phys.comp(0), m[2]);
        SpectralField<Scalar> div = SpectralField<Scalar>::vector(grid);
        div.comp(0) = (derivative(s11, 1) + derivative(s12, 2)).comp(0);
        div.comp(1) = (derivative(s12, 1) + derivative(s22, 2)).comp(0);
        return times_one_plus_a(div);
    }

    // F = (1+a) div((mu_tilde(a) - mu) M(w)) + mu a Lap w - a grad p
    SpectralField<Scalar> forcing(const SpectralField<Scalar>& w,
                                  const SpectralField<Scalar>& p) const {
        SpectralField<Scalar> F = variable_stress_div(w);
        SpectralField<Scalar> lap = times_a(laplacian(w));
        lap *= mu;
        F += lap;
        F -= times_a(gradient(p));
        return F;
    }
};

template <typename Scalar>
SpectralField<Scalar> compute_forcing(const SpectralField<Scalar>& a,
                                      const SpectralField<Scalar>& w,
                                      const SpectralField<Scalar>& p,
                                      const ViscosityLaw<Scalar>& law) {
    return InhomOperators<Scalar>(a, law).forcing(w, p);
}

template <typename Scalar>
struct PressureSolution {
    SpectralField<Scalar> pi;       // scalar potential, zero mode 0
    SpectralField<Scalar> grad_pi;  // its gradient
    int iterations = 0;
    Scalar contraction_factor = 0;  // max observed update ratio
};

// Fixed-point solve of  -Lap Pi = div(a grad Pi) + rhs.
// Picard iteration Pi^{m+1} = (-Lap)^{-1}[div(a grad Pi^m) + rhs], contanting
// at rate ~ ||a||_inf; requires ||a||_inf <= kappa < 1 and convergence of the
// relative update below tol within max_iterations, else ContractionError.
template <typename Scalar>
PressureSolution<Scalar> fixed_point_pressure(const InhomOperators<Scalar>& ops,
                                              const SpectralField<Scalar>& rhs, Scalar kappa,
                                              Scalar tol = Scalar(1e-10),
                                              int max_iterations = 200) {
    if (!(kappa > Scalar(0) && kappa < Scalar(1)))
        throw ConfigurationError("pressure solve: kappa must lie in (0, 1)");
    if (ops.a_sup > kappa)
        throw ContractionError("pressure solve: ||a||_inf exceeds the contraction margin kappa",
                               static_cast<double>(ops.a_sup));

    PressureSolution<Scalar> out;
    SpectralField<Scalar> pi = inverse_neg_laplacian(rhs);
    Scalar prev_update = -1;
    for (int m = 1; m <= max_iterations; ++m) {
        SpectralField<Scalar> correction = divergence(ops.times_a(gradient(pi)));
        correction += rhs;
        SpectralField<Scalar> next = inverse_neg_laplacian(correction);
        const Scalar update = l2_norm_spectral(next - pi);
        const Scalar scale = std::max(l2_norm_spectral(next), Scalar(1e-300));
        if (prev_update > Scalar(0) && update > Scalar(0))
            out.contraction_factor = std::max(out.contraction_factor, update / prev_update);
        prev_update = update;
        pi = std::move(next);
        out.iterations = m;
        if (update <= tol * scale) {
            out.grad_pi = gradient(pi);
            out.pi = std::move(pi);
            return out;
        }
    }
    throw ContractionError("pressure solve: no convergence within " +
                               std::to_string(max_iterations) + " iterations",
                           static_cast<double>(ops.a_sup));
}

// Right side of the pressure equation for the correction system:
//   rhs = div F - div(v.grad v + w.grad v + v.grad w)
//       + div((1+a) div((mu_tilde - mu) M(v))) + mu div(a Lap v).
template <typename Scalar>
SpectralField<Scalar> pressure_rhs(const InhomOperators<Scalar>& ops,
                                   const SpectralField<Scalar>& v, const SpectralField<Scalar>& w,
                                   const SpectralField<Scalar>& forcing_F) {
    SpectralField<Scalar> transport = advection_term(v, v);
    transport += advection_term(w, v);
    transport += advection_term(v, w);

    SpectralField<Scalar> vec = forcing_F;
    vec -= transport;
    vec += ops.variable_stress_div(v);
    SpectralField<Scalar> aLap = ops.times_a(laplacian(v));
    aLap *= ops.mu;
    vec += aLap;
    return divergence(vec);
}

// Full pressure solve for the correction system state (a, v) against the
// background (w, p). Returns grad Pi_1 with zero mode 0.
template <typename Scalar>
PressureSolution<Scalar> solve_pressure(const InhomOperators<Scalar>& ops,
                                        const SpectralField<Scalar>& v,
                                        const SpectralField<Scalar>& w,
                                        const SpectralField<Scalar>& forcing_F, Scalar kappa,
                                        Scalar tol = Scalar(1e-10), int max_iterations = 200) {
    return fixed_point_pressure(ops, pressure_rhs(ops, v, w, forcing_F), kappa, tol,
                                max_iterations);
}

}  // namespace lpns2d
