#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lpns2d/patch_tracker.hpp"

namespace lpns2d {

// Flat key = value configuration with one [section] level; a key inside
// [grid] is addressed as "grid.n". Lines starting with # are comments.
class ConfigFile {
public:
    static ConfigFile parse(std::istream& is) {
        ConfigFile cfg;
        std::string line, section;
        while (std::getline(is, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[' && line.back() == ']') {
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigurationError("config: expected key = value, got: " + line);
            std::string key = trim(line.substr(0, eq));
            std::string value = trim(line.substr(eq + 1));
            if (!section.empty()) key = section + "." + key;
            cfg.values_[key] = value;
        }
        return cfg;
    }

    static ConfigFile parse_string(const std::string& text) {
        std::istringstream is(text);
        return parse(is);
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get(const std::string& key, const std::string& fallback) const {
        auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }
    double get(const std::string& key, double fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stod(it->second);
        } catch (const std::exception&) {
            throw ConfigurationError("config: key '" + key + "' is not a number: " + it->second);
        }
    }
    long get(const std::string& key, long fallback) const {
        auto it = values_.find(key);
        if (it == values_.end()) return fallback;
        try {
            return std::stol(it->second);
        } catch (const std::exception&) {
            throw ConfigurationError("config: key '" + key + "' is not an integer: " + it->second);
        }
    }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    static std::string trim(const std::string& s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return "";
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    }
    std::map<std::string, std::string> values_;
};

enum class Scenario { ClassicalNS, SmallnessSweep, DensityPatch, StokesValidation };

inline Scenario scenario_from_name(const std::string& name) {
    if (name == "classical-ns") return Scenario::ClassicalNS;
    if (name == "smallness-sweep") return Scenario::SmallnessSweep;
    if (name == "density-patch") return Scenario::DensityPatch;
    if (name == "stokes-validation") return Scenario::StokesValidation;
    throw ConfigurationError("unknown scenario: " + name +
                             " (expected classical-ns | smallness-sweep | density-patch |"
                             " stokes-validation)");
}

inline const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::ClassicalNS: return "classical-ns";
        case Scenario::SmallnessSweep: return "smallness-sweep";
        case Scenario::DensityPatch: return "density-patch";
        case Scenario::StokesValidation: return "stokes-validation";
    }
    return "?";
}

// Fully-resolved run configuration. Validation enforces the admissible index
// range 1 < q <= p < 4 and 1/q - 1/p <= 1/2; the uniqueness-range condition
// 1/p + 1/q >= 1 is only surfaced as a warning when violated.
struct RunConfig {
    Scenario scenario = Scenario::DensityPatch;
    std::string preset;

    int n = 128;
    double L = 2 * std::numbers::pi;

    std::string law_kind = "constant";  // constant | linear | custom-poly
    std::vector<double> law_coeffs;
    double mu = 1.0;

    double sigma = 0.02;
    double p = 2.0, q = 2.0;
    double dt = 0.0;
    double T = 1.0;
    double molly_cells = 2.0;
    double kappa = 0.5;
    double vacuum_margin = 0.1;
    double u0_amplitude = 1.0;

    // patch geometry
    std::string patch_shape = "disk";  // disk | ellipse | star
    double patch_radius = 0.8;
    double patch_a = 1.2, patch_b = 0.6;
    double patch_star_eps = 0.2;
    int patch_star_waves = 5;
    int markers = 512;

    // monitor constants (configured placeholders, never the paper's values)
    double C0 = 1.0, c0 = 1e-2, c2 = 0.1;
    double lambda1 = 8.0, lambda2 = 0.0;  // 0 -> 2/mu
    int multiplier_dictionary = 16;

    uint64_t seed = 0;
    bool deterministic = true;
    std::string out_dir = "out";

    std::vector<std::string> warnings;

    ViscosityLawd viscosity() const {
        if (law_kind == "constant") return ViscosityLawd::constant(mu);
        if (law_kind == "linear") return ViscosityLawd::linear(mu);
        if (law_kind == "custom-poly") return ViscosityLawd::polynomial(law_coeffs);
        throw ConfigurationError("unknown viscosity law: " + law_kind);
    }

    PatchShapeSpec<double> patch_spec() const {
        if (patch_shape == "disk") return PatchShapeSpec<double>::disk(patch_radius);
        if (patch_shape == "ellipse") return PatchShapeSpec<double>::ellipse(patch_a, patch_b);
        if (patch_shape == "star")
            return PatchShapeSpec<double>::star(patch_radius, patch_star_eps, patch_star_waves);
        throw ConfigurationError("unknown patch shape: " + patch_shape);
    }

    void validate() {
        warnings.clear();
        if (n < 8 || (n & (n - 1)) != 0)
            throw ConfigurationError("grid.n must be a power of two with n >= 8");
        if (!(L > 0)) throw ConfigurationError("grid.L must be positive");
        if (!(q > 1.0))
            throw ConfigurationError("index constraint violated: require 1 < q (got q = " +
                                     std::to_string(q) + ")");
        if (!(q <= p))
            throw ConfigurationError("index constraint violated: require q <= p");
        if (!(p < 4.0))
            throw ConfigurationError("index constraint violated: require p < 4 (got p = " +
                                     std::to_string(p) + ")");
        if (1.0 / q - 1.0 / p > 0.5 + 1e-12)
            throw ConfigurationError("index constraint violated: require 1/q - 1/p <= 1/2");
        if (1.0 / p + 1.0 / q < 1.0 - 1e-12)
            warnings.push_back("uniqueness range not satisfied: 1/p + 1/q < 1");
        if (!(std::abs(sigma) < 1.0))
            throw ConfigurationError("sigma must satisfy |sigma| < 1 (density positivity)");
        if (!(mu > 0)) throw ConfigurationError("mu must be positive");
        if (!(kappa > 0 && kappa < 1)) throw ConfigurationError("kappa must lie in (0, 1)");
        if (kappa > 0.5)
            warnings.push_back("kappa above 1/2 leaves little contraction margin");
        if (!(T > 0)) throw ConfigurationError("T must be positive");
        if (dt < 0) throw ConfigurationError("dt must be nonnegative");
        if (markers < 256) throw ConfigurationError("markers must be at least 256");
        (void)viscosity();
        (void)patch_spec();
    }

    // Overlays the keys present in the file onto the current values, so a
    // preset can seed the defaults and the file only override what it names.
    void load(const ConfigFile& cfg) {
        if (cfg.has("scenario")) scenario = scenario_from_name(cfg.get("scenario", ""));
        if (cfg.has("preset")) apply_preset(cfg.get("preset", ""));
        n = static_cast<int>(cfg.get("grid.n", static_cast<long>(n)));
        L = cfg.get("grid.L", L);
        law_kind = cfg.get("law", law_kind);
        // custom-poly coefficients: "law = custom-poly [c0,c1,...]"
        if (law_kind.rfind("custom-poly", 0) == 0) {
            const auto lb = law_kind.find('[');
            const auto rb = law_kind.find(']');
            if (lb == std::string::npos || rb == std::string::npos || rb < lb)
                throw ConfigurationError("custom-poly law needs coefficients: "
                                         "law = custom-poly [c0,c1,...]");
            std::string inner = law_kind.substr(lb + 1, rb - lb - 1);
            law_kind = "custom-poly";
            law_coeffs.clear();
            std::stringstream ss(inner);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty()) law_coeffs.push_back(std::stod(tok));
            if (law_coeffs.empty())
                throw ConfigurationError("custom-poly law: empty coefficient list");
        }
        mu = cfg.get("mu", mu);
        sigma = cfg.get("sigma", sigma);
        p = cfg.get("p", p);
        q = cfg.get("q", q);
        dt = cfg.get("dt", dt);
        T = cfg.get("T", T);
        molly_cells = cfg.get("molly_cells", molly_cells);
        kappa = cfg.get("kappa", kappa);
        vacuum_margin = cfg.get("vacuum_margin", vacuum_margin);
        u0_amplitude = cfg.get("u0_amplitude", u0_amplitude);
        patch_shape = cfg.get("patch.shape", patch_shape);
        patch_radius = cfg.get("patch.radius", patch_radius);
        patch_a = cfg.get("patch.a", patch_a);
        patch_b = cfg.get("patch.b", patch_b);
        patch_star_eps = cfg.get("patch.star_eps", patch_star_eps);
        patch_star_waves = static_cast<int>(cfg.get("patch.star_waves",
                                                    static_cast<long>(patch_star_waves)));
        markers = static_cast<int>(cfg.get("patch.markers", static_cast<long>(markers)));
        C0 = cfg.get("monitor.C0", C0);
        c0 = cfg.get("monitor.c0", c0);
        c2 = cfg.get("monitor.c2", c2);
        lambda1 = cfg.get("monitor.lambda1", lambda1);
        lambda2 = cfg.get("monitor.lambda2", lambda2);
        multiplier_dictionary = static_cast<int>(
            cfg.get("monitor.multiplier_dictionary", static_cast<long>(multiplier_dictionary)));
        seed = static_cast<uint64_t>(cfg.get("seed", static_cast<long>(seed)));
        out_dir = cfg.get("out_dir", out_dir);
    }

    static RunConfig from_file(const ConfigFile& cfg) {
        RunConfig rc;
        rc.load(cfg);
        return rc;
    }

    // Named presets fill scenario-appropriate defaults before overrides.
    void apply_preset(const std::string& name) {
        preset = name;
        if (name == "taylor-green") {
            scenario = Scenario::ClassicalNS;
            n = 128;
            L = 2 * std::numbers::pi;
            mu = 1.0;
            T = 1.0;
            u0_amplitude = 1.0;
        } else if (name == "density-patch-small") {
            scenario = Scenario::DensityPatch;
            n = 128;
            L = 2 * std::numbers::pi;
            mu = 1.0;
            T = 1.0;
            sigma = 0.02;
            patch_shape = "disk";
            patch_radius = 0.8;
            molly_cells = 2.0;
            law_kind = "linear";
            // configured monitor constants for the smallness regime
            C0 = 1e-3;
            c0 = 1.0;
            c2 = 1.0;
        } else {
            throw ConfigurationError("unknown preset: " + name);
        }
    }
};

}  // namespace lpns2d
