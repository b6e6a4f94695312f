// Batch driver: scenario runs, axis sweeps, artifact output.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "lpns2d/scenarios.hpp"

namespace {

int fail(const char* kind, const std::string& message, int code) {
    std::cerr << "error: kind=" << kind << " message=\"" << message << "\"\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lpns2d: pseudo-spectral 2-D inhomogeneous Navier-Stokes toolbox"};

    std::string config_path, scenario, preset, out = "out", sweep_arg;
    uint64_t seed = 0;
    bool deterministic = false;
    bool seed_given = false;

    app.add_option("--config", config_path, "configuration file (key = value, [section] groups)");
    app.add_option("--scenario", scenario,
                   "classical-ns | smallness-sweep | density-patch | stokes-validation");
    app.add_option("--preset", preset, "named preset (taylor-green, density-patch-small)");
    app.add_option("--out", out, "output directory");
    app.add_option("--seed", seed, "RNG seed for randomized diagnostics")
        ->each([&](const std::string&) { seed_given = true; });
    app.add_flag("--deterministic", deterministic,
                 "force the bit-deterministic single-lane kernels (always on; recorded)");
    app.add_option("--sweep", sweep_arg, "axis=v1,v2,... with axis in {sigma, u0_amp, mu, n}");

    CLI11_PARSE(app, argc, argv);

    try {
        lpns2d::RunConfig rc;
        if (!preset.empty()) rc.apply_preset(preset);
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw lpns2d::IoError("cannot open config file: " + config_path);
            rc.load(lpns2d::ConfigFile::parse(is));
        }
        if (!scenario.empty()) rc.scenario = lpns2d::scenario_from_name(scenario);
        if (seed_given) rc.seed = seed;
        rc.deterministic = true;  // single-lane kernels are the only mode
        rc.out_dir = out;

        if (!sweep_arg.empty()) {
            const auto eq = sweep_arg.find('=');
            if (eq == std::string::npos)
                throw lpns2d::ConfigurationError("--sweep expects axis=v1,v2,...");
            const std::string axis = sweep_arg.substr(0, eq);
            std::vector<double> values;
            std::stringstream ss(sweep_arg.substr(eq + 1));
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) values.push_back(std::stod(tok));
            if (values.empty()) {
                std::cout << "sweep: empty value list, nothing to do\n";
                return 0;
            }
            rc.validate();
            return lpns2d::run_sweep(rc, axis, values, out);
        }

        auto res = lpns2d::run_scenario(rc, out);
        std::cout << "outcome: " << res.outcome << "\n";
        if (!res.message.empty()) std::cout << res.message << "\n";
        for (const auto& w : rc.warnings) std::cout << "warning: " << w << "\n";
        return res.exit_code;
    } catch (const lpns2d::ConfigurationError& e) {
        return fail("validation", e.what(), 2);
    } catch (const lpns2d::DomainError& e) {
        return fail("validation", e.what(), 2);
    } catch (const lpns2d::ContractionError& e) {
        return fail("contraction", e.what(), 3);
    } catch (const lpns2d::StabilityError& e) {
        return fail("stability", e.what(), 3);
    } catch (const lpns2d::IoError& e) {
        return fail("io", e.what(), 4);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
}
