#pragma once

#include <functional>
#include <vector>

#include "lpns2d/operators.hpp"

namespace lpns2d {

// Density-dependent viscosity mu(rho), smooth and positive on the attained
// density range. Carried either as polynomial coefficients in rho or as a
// callable paired with its derivative. mu_tilde(a) = mu(1/(1+a)) is the form
// the solver consumes; mu0 = mu_tilde(0) = mu(1) is the reference viscosity
// of the constant-density split.
template <typename Scalar>
struct ViscosityLaw {
    std::vector<Scalar> coeffs;  // mu(rho) = sum_k coeffs[k] rho^k
    std::function<Scalar(Scalar)> custom;
    std::function<Scalar(Scalar)> custom_derivative;

    static ViscosityLaw constant(Scalar mu) {
        if (!(mu > Scalar(0))) throw ConfigurationError("viscosity: mu must be positive");
        return ViscosityLaw{{mu}, nullptr, nullptr};
    }
    // mu(rho) = mu * rho, normalized so mu_tilde(0) = mu
    static ViscosityLaw linear(Scalar mu) {
        if (!(mu > Scalar(0))) throw ConfigurationError("viscosity: mu must be positive");
        return ViscosityLaw{{Scalar(0), mu}, nullptr, nullptr};
    }
    static ViscosityLaw polynomial(std::vector<Scalar> c) {
        ViscosityLaw law{std::move(c), nullptr, nullptr};
        if (!(law.mu(Scalar(1)) > Scalar(0)))
            throw ConfigurationError("viscosity: polynomial law must satisfy mu(1) > 0");
        return law;
    }
    static ViscosityLaw callable(std::function<Scalar(Scalar)> f,
                                 std::function<Scalar(Scalar)> df) {
        return ViscosityLaw{{}, std::move(f), std::move(df)};
    }

    Scalar mu(Scalar rho) const {
        if (custom) return custom(rho);
        Scalar acc = 0, power = 1;
        for (const Scalar c : coeffs) {
            acc += c * power;
            power *= rho;
        }
        return acc;
    }

    Scalar mu_prime(Scalar rho) const {
        if (custom) {
            if (!custom_derivative)
                throw ConfigurationError("viscosity: callable law needs a paired derivative");
            return custom_derivative(rho);
        }
        Scalar acc = 0, power = 1;
        for (size_t k = 1; k < coeffs.size(); ++k) {
            acc += Scalar(k) * coeffs[k] * power;
            power *= rho;
        }
        return acc;
    }

    Scalar mu_tilde(Scalar a) const { return mu(Scalar(1) / (Scalar(1) + a)); }
    Scalar mu0() const { return mu(Scalar(1)); }

    // sup |d/da mu_tilde| over a in [-bound, bound], by sampling
    Scalar mu_tilde_derivative_sup(Scalar bound, int samples = 512) const {
        Scalar worst = 0;
        for (int k = 0; k <= samples; ++k) {
            const Scalar a = -bound + Scalar(2) * bound * Scalar(k) / Scalar(samples);
            const Scalar rho = Scalar(1) / (Scalar(1) + a);
            worst = std::max(worst, std::abs(mu_prime(rho) * rho * rho));
        }
        return worst;
    }
};

// Pointwise mu_tilde(a) on the grid, transformed back with dealiasing.
// Throws if the no-vacuum margin 1 + a >= delta is breached.
template <typename Scalar>
SpectralField<Scalar> viscosity_field(const SpectralField<Scalar>& a,
                                      const ViscosityLaw<Scalar>& law,
                                      Scalar vacuum_margin = Scalar(0.1)) {
    if (!a.is_scalar()) throw DimensionError("viscosity_field: a must be scalar");
    PhysicalField<Scalar> pa = to_physical(a);
    const Scalar one_plus_min = Scalar(1) + pa.comp(0).minCoeff();
    if (!(one_plus_min >= vacuum_margin))
        throw StateError("viscosity_field: vacuum breach, min(1+a) = " +
                         std::to_string(static_cast<double>(one_plus_min)));
    PhysicalField<Scalar> out(a.grid, 1);
    Scalar mu_min = std::numeric_limits<Scalar>::infinity();
    for (int j = 0; j < a.grid.n; ++j) {
        for (int i = 0; i < a.grid.n; ++i) {
            out.comp(0)(i, j) = law.mu_tilde(pa.comp(0)(i, j));
            mu_min = std::min(mu_min, out.comp(0)(i, j));
        }
    }
    if (!(mu_min > Scalar(0)))
        throw StateError("viscosity_field: law is not positive on the attained density range");
    SpectralField<Scalar> spec = to_spectral(out);
    dealias_in_place(spec);
    return spec;
}

using ViscosityLawd = ViscosityLaw<double>;

}  // namespace lpns2d
