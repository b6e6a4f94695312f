#pragma once

#include <functional>
#include <vector>

#include "lpns2d/operators.hpp"

namespace lpns2d {

// ---------------------------------------------------------------------------
// Heat semigroup and the linear Stokes solver
// ---------------------------------------------------------------------------

// Multiplies coefficients by exp(-a |k|^2); a = mu * t.
template <typename Scalar>
SpectralField<Scalar> apply_heat_semigroup(const SpectralField<Scalar>& f, Scalar a) {
    SpectralField<Scalar> out = f;
    const int n = f.grid.n;
    for (int j = 0; j < n; ++j) {
        const Scalar k2j = f.grid.wavenumber(j) * f.grid.wavenumber(j);
        for (int i = 0; i < n; ++i) {
            const Scalar k2 = f.grid.wavenumber(i) * f.grid.wavenumber(i) + k2j;
            const Scalar damp = std::exp(-a * k2);
            for (int c = 0; c < f.components; ++c) out.comp(c)(i, j) *= damp;
        }
    }
    return out;
}

// w_L(t) = e^{mu t Lap} u0.
template <typename Scalar>
SpectralField<Scalar> heat_flow(const SpectralField<Scalar>& u0, Scalar mu, Scalar t) {
    if (t < Scalar(0)) throw DomainError("heat_flow: negative time");
    if (!(mu > Scalar(0))) throw DomainError("heat_flow: viscosity must be positive");
    require_solenoidal(u0, Scalar(1e-8));
    SpectralField<Scalar> out = apply_heat_semigroup(u0, mu * t);
    out.solenoidal = true;
    return out;
}

// Pressure of the constant-density system: -Lap p = div(w . grad w).
template <typename Scalar>
SpectralField<Scalar> classical_pressure(const SpectralField<Scalar>& w) {
    require_solenoidal(w, Scalar(1e-8));
    SpectralField<Scalar> rhs = divergence(advection_term(w, w));
    return inverse_neg_laplacian(rhs);
}

template <typename Scalar>
using ForcingSampler = std::function<SpectralField<Scalar>(Scalar)>;

template <typename Scalar>
struct StokesTrajectory {
    std::vector<Scalar> times;
    std::vector<SpectralField<Scalar>> velocity;
    std::vector<SpectralField<Scalar>> grad_pi;
};

// d_t u - nu Lap u + grad Pi = g, div u = 0. Diffusion is integrated exactly
// (integrating factor); the Leray-projected forcing enters through the
// trapezoid rule, so the scheme is second order in dt. grad Pi is recovered
// algebraically as (I - P) g at the sample times.
template <typename Scalar>
StokesTrajectory<Scalar> solve_stokes(const SpectralField<Scalar>& u0,
                                      const ForcingSampler<Scalar>& g, Scalar nu, Scalar T,
                                      Scalar dt) {
    if (!(dt > Scalar(0))) throw DomainError("solve_stokes: dt must be positive");
    require_solenoidal(u0, Scalar(1e-8));

    StokesTrajectory<Scalar> out;
    auto record = [&](Scalar t, const SpectralField<Scalar>& u, const SpectralField<Scalar>& gt) {
        out.times.push_back(t);
        out.velocity.push_back(u);
        SpectralField<Scalar> gp = gt;
        gp -= leray_project(gt);
        out.grad_pi.push_back(std::move(gp));
    };

    SpectralField<Scalar> u = u0;
    u.solenoidal = true;
    Scalar t = 0;
    SpectralField<Scalar> g_now = g(t);
    record(t, u, g_now);
    while (t < T - Scalar(1e-12) * std::max(Scalar(1), T)) {
        const Scalar step = std::min(dt, T - t);
        SpectralField<Scalar> g_next = g(t + step);
        SpectralField<Scalar> pf_now = leray_project(g_now);
        SpectralField<Scalar> pf_next = leray_project(g_next);
        pf_now *= step / Scalar(2);
        pf_next *= step / Scalar(2);
        u += pf_now;
        u = apply_heat_semigroup(u, nu * step);
        u += pf_next;
        u.solenoidal = true;
        t += step;
        g_now = std::move(g_next);
        record(t, u, g_now);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The classical 2-D system: w = w_L + w_bar
// ---------------------------------------------------------------------------

template <typename Scalar>
struct NSState {
    SpectralField<Scalar> w_L;
    SpectralField<Scalar> w_bar;
    SpectralField<Scalar> p;
    Scalar t = 0;
    Scalar mu = 1;
};

// Trajectory of the perturbation system. w_L is never stored: the semigroup
// is exact and cheap, so w_L(t) is evaluated on demand at any time, including
// stage times between samples. w_bar and p are linearly interpolated, which
// is consistent with the second-order stepping.
template <typename Scalar>
struct NSTrajectory {
    Grid<Scalar> grid;
    Scalar mu = 1;
    SpectralField<Scalar> u0;
    std::vector<Scalar> times;
    std::vector<SpectralField<Scalar>> w_bar;
    std::vector<SpectralField<Scalar>> pressure;

    // discrete energy ledger for the perturbation estimate
    std::vector<Scalar> energy_lhs;  // 1/2 ||w_bar||^2 + mu int ||grad w_bar||^2
    std::vector<Scalar> energy_rhs;  // int (||w_bar||^2 ||grad w_L||_inf + ...)

    size_t size() const { return times.size(); }

    SpectralField<Scalar> w_L_at(Scalar t) const { return heat_flow(u0, mu, t); }

    size_t bracket(Scalar t) const {
        if (times.empty()) throw DomainError("ns trajectory: empty");
        size_t k = 0;
        while (k + 2 < times.size() && times[k + 1] <= t) ++k;
        return k;
    }

    SpectralField<Scalar> lerp(const std::vector<SpectralField<Scalar>>& fields, Scalar t) const {
        const size_t k = bracket(t);
        if (t <= times.front()) return fields.front();
        if (t >= times.back()) return fields.back();
        const Scalar w1 = (t - times[k]) / (times[k + 1] - times[k]);
        SpectralField<Scalar> a = fields[k];
        a *= (Scalar(1) - w1);
        SpectralField<Scalar> b = fields[k + 1];
        b *= w1;
        a += b;
        return a;
    }

    SpectralField<Scalar> w_bar_at(Scalar t) const { return lerp(w_bar, t); }
    SpectralField<Scalar> w_at(Scalar t) const {
        SpectralField<Scalar> w = w_L_at(t);
        w += w_bar_at(t);
        w.solenoidal = true;
        return w;
    }
    SpectralField<Scalar> pressure_at(Scalar t) const { return lerp(pressure, t); }

    NSState<Scalar> state_at(size_t k) const {
        return NSState<Scalar>{w_L_at(times[k]), w_bar[k], pressure[k], times[k], mu};
    }
};

template <typename Scalar>
Scalar default_advective_dt(const SpectralField<Scalar>& u0) {
    const Scalar vmax = sup_norm(u0);
    return Scalar(0.25) * u0.grid.spacing() / std::max(Scalar(1), vmax);
}

// Advances d_t w_bar - mu Lap w_bar = -P[(w_L + w_bar) . grad (w_L + w_bar)]
// by integrating-factor Heun steps (diffusion exact, nonlinearity explicit,
// Leray projection at every stage). w_bar(0) = w_bar0, zero in the split the
// trajectory is built for. Throws StabilityError with an advisory step when
// the advective CFL number ||w||_inf dt / h exceeds 1/2.
template <typename Scalar>
NSTrajectory<Scalar> solve_wbar(const SpectralField<Scalar>& u0, Scalar mu, Scalar T, Scalar dt,
                                const SpectralField<Scalar>* w_bar0 = nullptr) {
    if (!(dt > Scalar(0))) throw DomainError("solve_wbar: dt must be positive");
    if (!(mu > Scalar(0))) throw DomainError("solve_wbar: viscosity must be positive");
    require_solenoidal(u0, Scalar(1e-8));

    NSTrajectory<Scalar> traj;
    traj.grid = u0.grid;
    traj.mu = mu;
    traj.u0 = dealias(u0);
    traj.u0.solenoidal = true;

    SpectralField<Scalar> wb =
        w_bar0 ? leray_project(dealias(*w_bar0)) : SpectralField<Scalar>::vector(u0.grid);
    wb.solenoidal = true;

    auto rhs = [&traj](const SpectralField<Scalar>& wbar, Scalar t) {
        SpectralField<Scalar> w = traj.w_L_at(t);
        w += wbar;
        SpectralField<Scalar> adv = advection_term(w, w);
        adv *= Scalar(-1);
        return leray_project(adv);
    };

    const Scalar h = u0.grid.spacing();
    Scalar t = 0;
    Scalar lhs_int = 0, rhs_int = 0;  // running quadratures of the energy terms
    Scalar grad_prev = 0, drift_prev = 0;

    auto record = [&](bool first) {
        SpectralField<Scalar> w = traj.w_L_at(t);
        w += wb;
        w.solenoidal = true;
        traj.times.push_back(t);
        traj.pressure.push_back(classical_pressure(w));
        traj.w_bar.push_back(wb);

        // energy ledger: trapezoid accumulation of both sides
        SpectralField<Scalar> gx = derivative(wb, 1), gy = derivative(wb, 2);
        const Scalar grad_sq = l2_norm_spectral(gx) * l2_norm_spectral(gx) +
                               l2_norm_spectral(gy) * l2_norm_spectral(gy);
        SpectralField<Scalar> wl = traj.w_L_at(t);
        SpectralField<Scalar> glx = derivative(wl, 1), gly = derivative(wl, 2);
        PhysicalField<Scalar> pglx = to_physical(glx), pgly = to_physical(gly);
        const Scalar grad_wl_inf = std::max(
            (pglx.comp(0).square() + pglx.comp(1).square()).sqrt().maxCoeff(),
            (pgly.comp(0).square() + pgly.comp(1).square()).sqrt().maxCoeff());
        const Scalar wb_l2 = l2_norm_spectral(wb);
        const Scalar conv = lp_norm(advection_term(wl, wl), Scalar(2));
        const Scalar drift = wb_l2 * wb_l2 * grad_wl_inf + wb_l2 * conv;
        if (!first) {
            const Scalar step = traj.times.back() - traj.times[traj.times.size() - 2];
            lhs_int += Scalar(0.5) * step * (grad_sq + grad_prev);
            rhs_int += Scalar(0.5) * step * (drift + drift_prev);
        }
        grad_prev = grad_sq;
        drift_prev = drift;
        traj.energy_lhs.push_back(Scalar(0.5) * wb_l2 * wb_l2 + mu * lhs_int);
        traj.energy_rhs.push_back(rhs_int);
    };

    record(true);
    while (t < T - Scalar(1e-12) * std::max(Scalar(1), T)) {
        const Scalar step = std::min(dt, T - t);

        SpectralField<Scalar> w_full = traj.w_L_at(t);
        w_full += wb;
        const Scalar cfl = sup_norm(w_full) * step / h;
        if (cfl > Scalar(0.5))
            throw StabilityError("solve_wbar: advective CFL exceeded",
                                 static_cast<double>(Scalar(0.5) * h / sup_norm(w_full)));

        SpectralField<Scalar> k1 = rhs(wb, t);
        SpectralField<Scalar> stage = wb;
        SpectralField<Scalar> k1dt = k1;
        k1dt *= step;
        stage += k1dt;
        stage = apply_heat_semigroup(stage, mu * step);
        SpectralField<Scalar> k2 = rhs(stage, t + step);

        wb = apply_heat_semigroup(wb, mu * step);
        SpectralField<Scalar> k1e = apply_heat_semigroup(k1, mu * step);
        k1e *= step / Scalar(2);
        k2 *= step / Scalar(2);
        wb += k1e;
        wb += k2;
        wb = leray_project(wb);

        t += step;
        record(false);
    }
    return traj;
}

}  // namespace lpns2d
