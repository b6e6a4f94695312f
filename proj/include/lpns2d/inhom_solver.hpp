#pragma once

#include "lpns2d/ns_solver.hpp"
#include "lpns2d/pressure_solver.hpp"
#include "lpns2d/time_norms.hpp"
#include "lpns2d/transport.hpp"

namespace lpns2d {

// State of the correction system: density fluctuation a = 1/rho - 1, the
// correction velocity v (v(0) = 0), and the latest pressure potential.
// The background (w, p) lives in the NSTrajectory the stepper runs against.
template <typename Scalar>
struct SolverState {
    SpectralField<Scalar> a;
    SpectralField<Scalar> v;
    SpectralField<Scalar> pi1;
    SpectralField<Scalar> grad_pi1;
    Scalar t = 0;

    static SolverState initial(const SpectralField<Scalar>& a0) {
        SolverState s;
        s.a = a0;
        s.v = SpectralField<Scalar>::vector(a0.grid);
        s.v.solenoidal = true;
        s.pi1 = SpectralField<Scalar>::scalar(a0.grid);
        s.grad_pi1 = SpectralField<Scalar>::vector(a0.grid);
        s.t = 0;
        return s;
    }
};

template <typename Scalar>
struct StepDiagnostics {
    int pressure_iterations = 0;
    Scalar contraction_factor = 0;
    Scalar cfl_number = 0;
    bool cfl_advisory = false;
    Scalar displacement_cells = 0;
};

namespace detail {

// Momentum right side of the correction equation, Leray-projected:
//   G = F - (1+a) grad Pi_1 + mu a Lap v + (1+a) div((mu~ - mu) M(v))
//       - (v.grad v + v.grad w + w.grad v)
template <typename Scalar>
SpectralField<Scalar> momentum_rhs(const InhomOperators<Scalar>& ops,
                                   const SpectralField<Scalar>& v,
                                   const SpectralField<Scalar>& w,
                                   const SpectralField<Scalar>& forcing_F,
                                   const SpectralField<Scalar>& grad_pi) {
    SpectralField<Scalar> G = forcing_F;
    G -= ops.times_one_plus_a(grad_pi);
    SpectralField<Scalar> aLap = ops.times_a(laplacian(v));
    aLap *= ops.mu;
    G += aLap;
    G += ops.variable_stress_div(v);
    G -= advection_term(v, v);
    G -= advection_term(v, w);
    G -= advection_term(w, v);
    return leray_project(G);
}

}  // namespace detail

// One integrating-factor Heun step of the v equation followed by the
// semi-Lagrangian transport of a with the time-centered velocity v + w.
// Operator ordering for the committed updates: pressure is solved at both
// stage times, then v advances, then a is advected. The second stage sees a
// first-order advective prediction of a(t+dt); with a frozen across the step
// the a-coupling would drop the scheme to first order.
template <typename Scalar>
StepDiagnostics<Scalar> step_v(SolverState<Scalar>& state, Scalar dt,
                               const ViscosityLaw<Scalar>& law, const NSTrajectory<Scalar>& ns,
                               Scalar kappa = Scalar(0.5),
                               Scalar vacuum_margin = Scalar(0.1)) {
    if (!(dt > Scalar(0))) throw DomainError("step_v: dt must be positive");
    InhomOperators<Scalar> ops(state.a, law, vacuum_margin);
    const Scalar mu = ops.mu;
    const Scalar t0 = state.t, t1 = state.t + dt;
    StepDiagnostics<Scalar> diag;

    auto stage_rhs = [&](const InhomOperators<Scalar>& stage_ops, const SpectralField<Scalar>& v,
                         Scalar t, PressureSolution<Scalar>& psol) {
        SpectralField<Scalar> w = ns.w_at(t);
        SpectralField<Scalar> p = ns.pressure_at(t);
        SpectralField<Scalar> F = stage_ops.forcing(w, p);
        psol = solve_pressure(stage_ops, v, w, F, kappa);
        diag.pressure_iterations = std::max(diag.pressure_iterations, psol.iterations);
        diag.contraction_factor = std::max(diag.contraction_factor, psol.contraction_factor);
        return detail::momentum_rhs(stage_ops, v, w, F, psol.grad_pi);
    };

    PressureSolution<Scalar> ps1, ps2;
    SpectralField<Scalar> g1 = stage_rhs(ops, state.v, t0, ps1);

    SpectralField<Scalar> stage = state.v;
    SpectralField<Scalar> g1dt = g1;
    g1dt *= dt;
    stage += g1dt;
    stage = apply_heat_semigroup(stage, mu * dt);

    SpectralField<Scalar> u_now = state.v;
    u_now += ns.w_at(t0);
    u_now.solenoidal = true;
    SpectralField<Scalar> a_predicted = advect_scalar(state.a, u_now, dt).field;
    InhomOperators<Scalar> ops_predicted(a_predicted, law, vacuum_margin);

    SpectralField<Scalar> g2 = stage_rhs(ops_predicted, stage, t1, ps2);

    SpectralField<Scalar> v_new = apply_heat_semigroup(state.v, mu * dt);
    SpectralField<Scalar> g1e = apply_heat_semigroup(g1, mu * dt);
    g1e *= dt / Scalar(2);
    g2 *= dt / Scalar(2);
    v_new += g1e;
    v_new += g2;
    v_new = leray_project(v_new);

    // transport of a by the time-centered total velocity
    SpectralField<Scalar> u_mid = state.v;
    u_mid += v_new;
    u_mid *= Scalar(0.5);
    u_mid += ns.w_at(t0 + dt / Scalar(2));
    u_mid.solenoidal = true;
    AdvectResult<Scalar> adv = advect_scalar(state.a, u_mid, dt);

    diag.cfl_number = sup_norm(u_mid) * dt / state.a.grid.spacing();
    diag.cfl_advisory = adv.cfl_advisory || diag.cfl_number > Scalar(0.5);
    diag.displacement_cells = adv.max_displacement_cells;

    state.a = std::move(adv.field);
    state.v = std::move(v_new);
    state.pi1 = std::move(ps2.pi);
    state.grad_pi1 = std::move(ps2.grad_pi);
    state.t = t1;
    return diag;
}

// Assembled primitive fields rho = 1/(1+a), u = v + w, Pi = Pi_1 + p.
template <typename Scalar>
struct AssembledSolution {
    PhysicalField<Scalar> rho;
    PhysicalField<Scalar> u;
    PhysicalField<Scalar> pi;
};

template <typename Scalar>
AssembledSolution<Scalar> assemble_solution(const SolverState<Scalar>& state,
                                            const NSTrajectory<Scalar>& ns,
                                            Scalar vacuum_margin = Scalar(0.1)) {
    AssembledSolution<Scalar> out;
    PhysicalField<Scalar> pa = to_physical(state.a);
    const Scalar one_plus_min = Scalar(1) + pa.comp(0).minCoeff();
    if (!(one_plus_min >= vacuum_margin))
        throw StateError("assemble_solution: vacuum breach");
    out.rho = PhysicalField<Scalar>(state.a.grid, 1);
    out.rho.comp(0) = (Scalar(1) + pa.comp(0)).inverse();

    SpectralField<Scalar> u = state.v;
    u += ns.w_at(state.t);
    out.u = to_physical(u);

    SpectralField<Scalar> pi = state.pi1;
    pi += ns.pressure_at(state.t);
    out.pi = to_physical(pi);
    return out;
}

// ---------------------------------------------------------------------------
// Whole-run driver with per-step norm recording
// ---------------------------------------------------------------------------

template <typename Scalar>
struct CoupledParams {
    Scalar T = 1;
    Scalar dt = 0;  // 0: advective default from the background data
    Scalar kappa = Scalar(0.5);
    Scalar vacuum_margin = Scalar(0.1);
    Scalar p = 2;  // velocity-space integrability index
    Scalar q = 2;  // density-space integrability index
};

template <typename Scalar>
struct CoupledTrajectory {
    std::vector<Scalar> times;
    NormSeries<Scalar> a_norms;        // B^{2/q}_{q,1}
    NormSeries<Scalar> v_low;          // B^{-1+2/p}_{p,1}
    NormSeries<Scalar> v_high;         // B^{1+2/p}_{p,1}
    NormSeries<Scalar> grad_pi_norms;  // B^{-1+2/p}_{p,1} of grad Pi_1
    std::vector<Scalar> v_l2;
    std::vector<Scalar> a_integral;
    std::vector<Scalar> rho_integral;
    std::vector<Scalar> a_min, a_max;
    std::vector<StepDiagnostics<Scalar>> step_diagnostics;
    SolverState<Scalar> state;  // final
};

// Called after every step with the assembled total velocity at the two step
// endpoints and the committed state, for consumers that track material
// objects or sample the density along the way.
template <typename Scalar>
using StepObserver =
    std::function<void(Scalar t_prev, const SpectralField<Scalar>& u_prev, Scalar t_new,
                       const SpectralField<Scalar>& u_new, const SolverState<Scalar>& state)>;

template <typename Scalar>
CoupledTrajectory<Scalar> run_coupled(const SpectralField<Scalar>& a0,
                                      const NSTrajectory<Scalar>& ns,
                                      const ViscosityLaw<Scalar>& law,
                                      const DyadicPartition<Scalar>& part,
                                      const CoupledParams<Scalar>& params,
                                      const StepObserver<Scalar>& observer = nullptr) {
    CoupledTrajectory<Scalar> traj;
    traj.a_norms.spec = NormSpec<Scalar>(Scalar(2) / params.q, params.q, 1);
    traj.v_low.spec = NormSpec<Scalar>(Scalar(-1) + Scalar(2) / params.p, params.p, 1);
    traj.v_high.spec = NormSpec<Scalar>(Scalar(1) + Scalar(2) / params.p, params.p, 1);
    traj.grad_pi_norms.spec = NormSpec<Scalar>(Scalar(-1) + Scalar(2) / params.p, params.p, 1);

    traj.state = SolverState<Scalar>::initial(a0);
    Scalar dt = params.dt;
    if (!(dt > Scalar(0))) {
        SpectralField<Scalar> u_init = ns.w_at(Scalar(0));
        dt = default_advective_dt(u_init);
    }

    auto record = [&](const SolverState<Scalar>& s) {
        traj.times.push_back(s.t);
        traj.a_norms.append_field(s.t, s.a, part);
        traj.v_low.append_field(s.t, s.v, part);
        traj.v_high.append_field(s.t, s.v, part);
        traj.grad_pi_norms.append_field(s.t, s.grad_pi1, part);
        traj.v_l2.push_back(l2_norm_spectral(s.v));
        traj.a_integral.push_back(integral(s.a));
        PhysicalField<Scalar> pa = to_physical(s.a);
        traj.a_min.push_back(pa.comp(0).minCoeff());
        traj.a_max.push_back(pa.comp(0).maxCoeff());
        PhysicalField<Scalar> rho(s.a.grid, 1);
        rho.comp(0) = (Scalar(1) + pa.comp(0)).inverse();
        traj.rho_integral.push_back(rho.comp(0).sum() * s.a.grid.spacing() * s.a.grid.spacing());
    };

    record(traj.state);
    while (traj.state.t < params.T - Scalar(1e-12) * std::max(Scalar(1), params.T)) {
        const Scalar step = std::min(dt, params.T - traj.state.t);
        const Scalar t_prev = traj.state.t;
        SpectralField<Scalar> u_prev;
        if (observer) {
            u_prev = traj.state.v;
            u_prev += ns.w_at(t_prev);
        }
        traj.step_diagnostics.push_back(
            step_v(traj.state, step, law, ns, params.kappa, params.vacuum_margin));
        record(traj.state);
        if (observer) {
            SpectralField<Scalar> u_new = traj.state.v;
            u_new += ns.w_at(traj.state.t);
            observer(t_prev, u_prev, traj.state.t, u_new, traj.state);
        }
    }
    return traj;
}

}  // namespace lpns2d
