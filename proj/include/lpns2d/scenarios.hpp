#pragma once

#include <sstream>

#include "lpns2d/artifacts.hpp"
#include "lpns2d/config.hpp"
#include "lpns2d/field_io.hpp"

namespace lpns2d {

// Taylor-Green datum used by the classical and patch scenarios.
inline SpectralFieldd taylor_green_field(const Gridd& grid, double amp) {
    PhysicalFieldd p(grid, 2);
    for (int j = 0; j < grid.n; ++j) {
        const double y = grid.coord(j);
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.coord(i);
            p.comp(0)(i, j) = amp * std::cos(x) * std::sin(y);
            p.comp(1)(i, j) = -amp * std::sin(x) * std::cos(y);
        }
    }
    auto u = to_spectral(p);
    u.solenoidal = true;
    return u;
}

struct ScenarioResult {
    int exit_code = 0;
    std::string outcome = "completed";
    std::string message;
};

namespace detail {

inline std::string field_to_string(const PhysicalFieldd& f) {
    std::ostringstream os;
    write_field(os, f);
    return os.str();
}

inline void write_config_echo(ArtifactSink& sink, const RunConfig& rc) {
    std::string s;
    s += "scenario = " + std::string(scenario_name(rc.scenario)) + "\n";
    s += "preset = " + rc.preset + "\n";
    s += "grid.n = " + std::to_string(rc.n) + "\n";
    s += "grid.L = " + format_double(rc.L) + "\n";
    s += "law = " + rc.law_kind + "\n";
    s += "mu = " + format_double(rc.mu) + "\n";
    s += "sigma = " + format_double(rc.sigma) + "\n";
    s += "p = " + format_double(rc.p) + "\n";
    s += "q = " + format_double(rc.q) + "\n";
    s += "dt = " + format_double(rc.dt) + "\n";
    s += "T = " + format_double(rc.T) + "\n";
    s += "molly_cells = " + format_double(rc.molly_cells) + "\n";
    s += "kappa = " + format_double(rc.kappa) + "\n";
    s += "u0_amplitude = " + format_double(rc.u0_amplitude) + "\n";
    s += "patch.shape = " + rc.patch_shape + "\n";
    s += "patch.radius = " + format_double(rc.patch_radius) + "\n";
    s += "patch.markers = " + std::to_string(rc.markers) + "\n";
    s += "monitor.C0 = " + format_double(rc.C0) + "\n";
    s += "monitor.c0 = " + format_double(rc.c0) + "\n";
    s += "monitor.c2 = " + format_double(rc.c2) + "\n";
    s += "monitor.lambda1 = " + format_double(rc.lambda1) + "\n";
    s += "monitor.lambda2 = " + format_double(rc.lambda2) + "\n";
    s += "seed = " + std::to_string(rc.seed) + "\n";
    s += "deterministic = " + std::string(rc.deterministic ? "true" : "false") + "\n";
    for (const auto& w : rc.warnings) s += "warning = " + w + "\n";
    sink.write("config_resolved.txt", s);
}

// long-format norm table with a trailing summary row per series
inline void write_norm_series(ArtifactSink& sink, const std::string& name,
                              const NormSeries<double>& series) {
    std::vector<std::string> rows;
    for (size_t k = 0; k < series.times.size(); ++k)
        for (size_t idx = 0; idx < series.table[k].size(); ++idx)
            rows.push_back(format_double(series.times[k]) + "," +
                           std::to_string(series.j_min + static_cast<int>(idx)) + "," +
                           format_double(series.table[k][idx]));
    rows.push_back("# besov s=" + format_double(series.spec.s) +
                   " p=" + format_double(series.spec.p) + " r=" + format_double(series.spec.r) +
                   " final=" + format_double(series.besov_at(series.times.size() - 1)));
    sink.write_csv(name, "t,j,shell_lp_norm", rows);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// classical-ns: background solver against the exact Taylor-Green decay
// ---------------------------------------------------------------------------

inline ScenarioResult run_classical_ns(const RunConfig& rc, ArtifactSink& sink) {
    Gridd grid(rc.n, rc.L);
    auto part = build_partition(grid);
    auto u0 = taylor_green_field(grid, rc.u0_amplitude);
    const double dt = rc.dt > 0 ? rc.dt : default_advective_dt(u0);
    auto traj = solve_wbar(u0, rc.mu, rc.T, dt);

    const double e0 = l2_norm_spectral(u0);
    NormSpec<double> low(-1 + 2 / rc.p, rc.p, 1);
    std::vector<std::string> decay_rows, index_rows;
    const size_t stride = std::max<size_t>(1, traj.size() / 8);
    double max_rel_error = 0;
    for (size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        auto w = traj.w_at(t);
        const double energy = l2_norm_spectral(w);
        const double expect = e0 * std::exp(-2 * rc.mu * t);
        const double rel = std::abs(energy - expect) / expect;
        max_rel_error = std::max(max_rel_error, rel);
        decay_rows.push_back(format_double(t) + "," + format_double(energy) + "," +
                             format_double(expect) + "," + format_double(rel));
        if (k % stride == 0 || k + 1 == traj.size()) {
            char fname[64];
            std::snprintf(fname, sizeof(fname), "w_%04zu.field", k);
            sink.write(fname, detail::field_to_string(to_physical(w)));
            index_rows.push_back(format_double(t) + "," + fname + "," + format_double(energy) +
                                 "," + format_double(besov_norm(w, low, part)));
        }
    }
    sink.write_csv("decay.csv", "t,l2_energy,tg_reference,rel_error", decay_rows);
    sink.write_csv("trajectory.csv", "t,file,l2_energy,besov_norm", index_rows);
    sink.write_gnuplot("decay.gp", "decay.csv", {{2, "energy"}, {3, "reference"}});

    ScenarioResult res;
    res.message = "max relative decay error " + format_double(max_rel_error);
    return res;
}

// ---------------------------------------------------------------------------
// stokes-validation: manufactured forcing against the closed form
// ---------------------------------------------------------------------------

inline ScenarioResult run_stokes_validation(const RunConfig& rc, ArtifactSink& sink) {
    Gridd grid(rc.n, rc.L);
    auto u0 = taylor_green_field(grid, rc.u0_amplitude);
    const double nu = rc.mu;
    auto forcing = [&](double t) {
        SpectralFieldd w = u0;
        w *= std::exp(-2 * nu * t);
        return advection_term(w, w);
    };
    const double dt = rc.dt > 0 ? rc.dt : default_advective_dt(u0);
    auto traj = solve_stokes<double>(u0, forcing, nu, rc.T, dt);

    std::vector<std::string> rows;
    double max_u_err = 0, max_gp_err = 0;
    for (size_t k = 0; k < traj.times.size(); ++k) {
        const double t = traj.times[k];
        SpectralFieldd expect = u0;
        expect *= std::exp(-2 * nu * t);
        const double ue = l2_norm_spectral(traj.velocity[k] - expect) / l2_norm_spectral(expect);
        auto g = forcing(t);
        const double ge = l2_norm_spectral(traj.grad_pi[k] - g) /
                          std::max(1e-300, l2_norm_spectral(g));
        max_u_err = std::max(max_u_err, ue);
        max_gp_err = std::max(max_gp_err, ge);
        rows.push_back(format_double(t) + "," + format_double(ue) + "," + format_double(ge));
    }
    sink.write_csv("stokes.csv", "t,velocity_rel_error,grad_pi_rel_error", rows);
    sink.write_gnuplot("stokes.gp", "stokes.csv", {{2, "velocity"}, {3, "grad Pi"}});

    ScenarioResult res;
    res.message = "max errors: velocity " + format_double(max_u_err) + ", grad pi " +
                  format_double(max_gp_err);
    return res;
}

// ---------------------------------------------------------------------------
// density-patch: the full coupled pipeline with monitor reports
// ---------------------------------------------------------------------------

inline void write_patch_reports(const PatchScenarioReport<double>& rep, const RunConfig& rc,
                                ArtifactSink& sink) {
    // eta report
    {
        std::vector<std::string> rows{format_double(rep.eta.a0_norm) + "," +
                                      format_double(rep.eta.u0_norm) + "," +
                                      format_double(rep.eta.mu0) + "," +
                                      format_double(rep.eta.C0) + "," +
                                      format_double(rep.eta.c0) + "," +
                                      format_double(rep.eta.log_eta) + "," +
                                      format_double(rep.eta.eta) + "," +
                                      format_double(rep.eta.threshold) + "," +
                                      (rep.eta.satisfied ? "yes" : "no")};
        sink.write_csv("eta_report.csv",
                       "a0_norm,u0_norm,mu0,C0,c0,log_eta,eta,threshold,satisfied", rows);
    }
    // weights
    {
        std::vector<std::string> rows;
        for (size_t k = 0; k < rep.weights.times.size(); ++k)
            rows.push_back(format_double(rep.weights.times[k]) + "," +
                           format_double(rep.weights.f1[k]) + "," +
                           format_double(rep.weights.f2[k]) + "," +
                           format_double(rep.weights.int_f1[k]) + "," +
                           format_double(rep.weights.int_f2[k]));
        sink.write_csv("weights.csv", "t,f1,f2,int_f1,int_f2", rows);
        sink.write_gnuplot("weights.gp", "weights.csv",
                           {{2, "f1"}, {3, "f2"}, {4, "int f1"}, {5, "int f2"}});
    }
    // bootstrap
    if (!rep.bootstrap.times.empty()) {
        std::vector<std::string> rows;
        for (size_t k = 0; k < rep.bootstrap.times.size(); ++k)
            rows.push_back(format_double(rep.bootstrap.times[k]) + "," +
                           format_double(rep.bootstrap.composite[k]) + "," +
                           format_double(rep.bootstrap.threshold) + "," +
                           (rep.bootstrap.composite[k] > rep.bootstrap.threshold ? "1" : "0"));
        sink.write_csv("bootstrap.csv", "t,composite,threshold,crossed", rows);
        sink.write_gnuplot("bootstrap.gp", "bootstrap.csv",
                           {{2, "composite"}, {3, "threshold"}});
    }
    // patch summary + marker snapshots
    {
        std::vector<std::string> rows;
        size_t mult_idx = 0;
        double mult_value = rep.multiplier_values.empty() ? 0 : rep.multiplier_values.front();
        for (size_t k = 0; k < rep.patch_times.size(); ++k) {
            while (mult_idx + 1 < rep.multiplier_times.size() &&
                   rep.multiplier_times[mult_idx + 1] <= rep.patch_times[k] + 1e-12) {
                ++mult_idx;
                mult_value = rep.multiplier_values[mult_idx];
            }
            rows.push_back(format_double(rep.patch_times[k]) + "," +
                           format_double(rep.patch_area[k]) + "," +
                           format_double(rep.patch_max_turning[k]) + "," +
                           format_double(mult_value));
        }
        sink.write_csv("patch_summary.csv", "t,area,max_turning,multiplier_estimate", rows);
        sink.write_gnuplot("patch_summary.gp", "patch_summary.csv",
                           {{2, "area"}, {3, "max turning"}});

        const size_t stride = std::max<size_t>(1, rep.marker_snapshots.size() / 10);
        for (size_t k = 0; k < rep.marker_snapshots.size(); ++k) {
            if (k % stride != 0 && k + 1 != rep.marker_snapshots.size()) continue;
            std::vector<std::string> mrows;
            for (size_t i = 0; i < rep.marker_snapshots[k].size(); ++i)
                mrows.push_back(format_double(rep.patch_times[k]) + "," + std::to_string(i) +
                                "," + format_double(rep.marker_snapshots[k][i][0]) + "," +
                                format_double(rep.marker_snapshots[k][i][1]));
            char fname[64];
            std::snprintf(fname, sizeof(fname), "markers_%04zu.csv", k);
            sink.write_csv(fname, "t,marker_index,x1,x2", mrows);
        }
    }
    // norm series and final fields
    if (!rep.traj.times.empty()) {
        detail::write_norm_series(sink, "norms_a.csv", rep.traj.a_norms);
        detail::write_norm_series(sink, "norms_v_low.csv", rep.traj.v_low);
        detail::write_norm_series(sink, "norms_v_high.csv", rep.traj.v_high);
        sink.write("a_final.field", detail::field_to_string(to_physical(rep.traj.state.a)));
    }
    // outcome classification
    {
        std::string s;
        const char* outcome = rep.outcome == ScenarioOutcome::BelowThreshold
                                  ? "below-threshold"
                                  : (rep.outcome == ScenarioOutcome::Crossed
                                         ? "crossed"
                                         : "contraction-failure");
        s += "outcome = " + std::string(outcome) + "\n";
        s += "message = " + rep.message + "\n";
        s += "eta_satisfied = " + std::string(rep.eta.satisfied ? "yes" : "no") + "\n";
        s += "area_drift_rel = " + format_double(rep.area_drift_rel) + "\n";
        s += "initial_max_turning = " + format_double(rep.initial_max_turning) + "\n";
        if (rep.bootstrap.upsilon.has_value())
            s += "upsilon = " + format_double(*rep.bootstrap.upsilon) + "\n";
        else
            s += "upsilon = none\n";
        s += "chain_constant = " + format_double(rep.bootstrap.chain_constant) + "\n";
        s += "resamples = " + std::to_string(rep.patch.resample_count) + "\n";
        s += "wrap_flag = " + std::string(rep.patch.wrap_flag ? "yes" : "no") + "\n";
        s += "wrap_around_indicator_initial = " + format_double(rep.wrap_indicator_initial) +
             "\n";
        s += "wrap_around_indicator_final = " + format_double(rep.wrap_indicator_final) + "\n";
        (void)rc;
        sink.write("scenario_report.txt", s);
    }
}

inline PatchScenarioConfig<double> patch_config_from(const RunConfig& rc) {
    PatchScenarioConfig<double> config;
    config.grid = Gridd(rc.n, rc.L);
    config.shape = rc.patch_spec();
    config.sigma = rc.sigma;
    config.markers = rc.markers;
    config.molly_cells = rc.molly_cells;
    config.law = rc.viscosity();
    config.T = rc.T;
    config.dt = rc.dt;
    config.p = rc.p;
    config.q = rc.q;
    config.kappa = rc.kappa;
    config.vacuum_margin = rc.vacuum_margin;
    config.C0 = rc.C0;
    config.c0 = rc.c0;
    config.c2 = rc.c2;
    config.lambda1 = rc.lambda1;
    config.lambda2 = rc.lambda2;
    config.multiplier_dictionary = rc.multiplier_dictionary;
    return config;
}

inline ScenarioResult run_density_patch(const RunConfig& rc, ArtifactSink& sink) {
    auto config = patch_config_from(rc);
    auto u0 = taylor_green_field(config.grid, rc.u0_amplitude);
    auto rep = run_patch_scenario(config, u0);
    write_patch_reports(rep, rc, sink);

    ScenarioResult res;
    switch (rep.outcome) {
        case ScenarioOutcome::BelowThreshold:
            res.outcome = "below-threshold";
            break;
        case ScenarioOutcome::Crossed:
            res.outcome = "crossed";
            break;
        case ScenarioOutcome::ContractionFailure:
            res.outcome = "contraction-failure";
            res.exit_code = 3;
            break;
    }
    res.message = rep.message;
    return res;
}

// ---------------------------------------------------------------------------
// smallness-sweep: the eta functional across jump sizes
// ---------------------------------------------------------------------------

inline ScenarioResult run_smallness_sweep(const RunConfig& rc, ArtifactSink& sink) {
    Gridd grid(rc.n, rc.L);
    auto part = build_partition(grid);
    auto u0 = taylor_green_field(grid, rc.u0_amplitude);
    auto law = rc.viscosity();

    std::vector<std::string> rows;
    for (double sigma : {0.005, 0.01, 0.02, 0.04, 0.08}) {
        auto init = init_patch(rc.patch_spec(), sigma, grid, rc.molly_cells, rc.markers);
        auto rep = smallness_eta(init.a0, u0, law, rc.p, rc.q, rc.C0, rc.c0, part);
        rows.push_back(format_double(sigma) + "," + format_double(rep.a0_norm) + "," +
                       format_double(rep.u0_norm) + "," + format_double(rep.log_eta) + "," +
                       format_double(rep.eta) + "," + format_double(rep.threshold) + "," +
                       (rep.satisfied ? "yes" : "no"));
    }
    sink.write_csv("eta_sweep.csv", "sigma,a0_norm,u0_norm,log_eta,eta,threshold,satisfied",
                   rows);
    sink.write_gnuplot("eta_sweep.gp", "eta_sweep.csv", {{5, "eta"}, {6, "threshold"}}, "sigma");
    return {};
}

// ---------------------------------------------------------------------------
// top-level dispatch and axis sweeps
// ---------------------------------------------------------------------------

inline ScenarioResult run_scenario(RunConfig rc, const std::string& out_dir) {
    rc.validate();
    ArtifactSink sink(out_dir);
    detail::write_config_echo(sink, rc);
    ScenarioResult res;
    switch (rc.scenario) {
        case Scenario::ClassicalNS: res = run_classical_ns(rc, sink); break;
        case Scenario::StokesValidation: res = run_stokes_validation(rc, sink); break;
        case Scenario::DensityPatch: res = run_density_patch(rc, sink); break;
        case Scenario::SmallnessSweep: res = run_smallness_sweep(rc, sink); break;
    }
    sink.finalize_manifest();
    return res;
}

// Applies one sweep-axis value to a config.
inline void apply_axis(RunConfig& rc, const std::string& axis, double value) {
    if (axis == "sigma")
        rc.sigma = value;
    else if (axis == "u0_amp")
        rc.u0_amplitude = value;
    else if (axis == "mu")
        rc.mu = value;
    else if (axis == "n")
        rc.n = static_cast<int>(value);
    else
        throw ConfigurationError("unknown sweep axis: " + axis +
                                 " (expected sigma | u0_amp | mu | n)");
}

// Runs the configured scenario once per value; failures are recorded per
// point and the sweep continues. Emits one aggregated row per point.
inline int run_sweep(const RunConfig& base, const std::string& axis,
                     const std::vector<double>& values, const std::string& out_dir) {
    if (values.size() > 16) throw ConfigurationError("sweep: at most 16 points");
    ArtifactSink sink(out_dir);
    std::vector<std::string> rows;
    for (double v : values) {
        RunConfig rc = base;
        std::string status = "ok", outcome, message;
        try {
            apply_axis(rc, axis, v);
            char sub[64];
            std::snprintf(sub, sizeof(sub), "point_%s_%g", axis.c_str(), v);
            auto res = run_scenario(rc, out_dir + "/" + sub);
            outcome = res.outcome;
            message = res.message;
        } catch (const std::exception& e) {
            status = "failed";
            message = e.what();
        }
        rows.push_back(axis + "," + format_double(v) + "," + status + "," + outcome + ",\"" +
                       message + "\"");
    }
    sink.write_csv("sweep.csv", "axis,value,status,outcome,message", rows);
    sink.finalize_manifest();
    return 0;
}

}  // namespace lpns2d
