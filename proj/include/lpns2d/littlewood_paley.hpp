#pragma once

#include <map>
#include <vector>

#include "lpns2d/operators.hpp"

namespace lpns2d {

// ---------------------------------------------------------------------------
// Dyadic partition of unity on the discrete frequency lattice
// ---------------------------------------------------------------------------
//
// The multipliers follow the classical construction
//   phi(tau) = chi(tau/2) - chi(tau),   supp phi in [3/4, 8/3],
//   chi(tau) = 1 - S((tau - 3/4) * 12/7),  supp chi in [0, 4/3],
// with S the C-infinity step built from exp(-1/x). Writing r_j = 1 - chi at
// level j, the shell multipliers are formed as phi_j = r_j * (1 - r_{j+1});
// since the rising edge of r_j and the falling edge of (1 - r_{j+1}) have
// disjoint supports this product telescopes exactly, so
//   chi_{j_min} + sum_{j=j_min}^{j_max} phi_j == 1
// holds to the last bit on the whole resolved band.

// C-infinity step: 0 for x <= 0, 1 for x >= 1, strictly monotone between.
template <typename Scalar>
Scalar smooth_step(Scalar x) {
    if (x <= Scalar(0)) return Scalar(0);
    if (x >= Scalar(1)) return Scalar(1);
    const Scalar a = std::exp(-Scalar(1) / x);
    const Scalar b = std::exp(-Scalar(1) / (Scalar(1) - x));
    return a / (a + b);
}

// Rising edge used by both chi and phi: 0 below tau=3/4, 1 above tau=4/3.
template <typename Scalar>
Scalar dyadic_rising_edge(Scalar tau) {
    return smooth_step((tau - Scalar(0.75)) * Scalar(12) / Scalar(7));
}

template <typename Scalar>
Scalar dyadic_chi(Scalar tau) {
    return Scalar(1) - dyadic_rising_edge(tau);
}

template <typename Scalar>
Scalar dyadic_phi(Scalar tau) {
    return dyadic_rising_edge(tau) * (Scalar(1) - dyadic_rising_edge(tau / Scalar(2)));
}

template <typename Scalar>
struct DyadicPartition {
    Grid<Scalar> grid;
    int j_min = 0;
    int j_max = 0;
    // rising[j - (j_min - 1)] holds r_j on the lattice for j in
    // [j_min - 1, j_max + 1]; phi and chi levels are derived views of it.
    std::vector<RealArray<Scalar>> rising;
    RealArray<Scalar> xi_abs;  // |xi| on the lattice

    int shell_count() const { return j_max - j_min + 1; }

    bool has_shell(int j) const { return j >= j_min && j <= j_max; }

    const RealArray<Scalar>& rising_level(int j) const {
        if (j < j_min - 1 || j > j_max + 1)
            throw IndexError("dyadic partition: level out of range");
        return rising[static_cast<size_t>(j - (j_min - 1))];
    }

    // phi(2^{-j} |xi|) samples for shell j.
    RealArray<Scalar> phi_samples(int j) const {
        if (!has_shell(j)) throw IndexError("dyadic partition: shell index out of range");
        return rising_level(j) * (Scalar(1) - rising_level(j + 1));
    }

    // chi(2^{-j} |xi|) samples; valid for j in [j_min - 1, j_max + 1].
    RealArray<Scalar> chi_samples(int j) const { return Scalar(1) - rising_level(j); }
};

template <typename Scalar>
DyadicPartition<Scalar> build_partition(const Grid<Scalar>& grid) {
    DyadicPartition<Scalar> part;
    part.grid = grid;

    const int n = grid.n;
    part.xi_abs = RealArray<Scalar>(n, n);
    Scalar xi_max = 0;
    for (int j = 0; j < n; ++j) {
        const Scalar k2 = grid.wavenumber(j);
        for (int i = 0; i < n; ++i) {
            const Scalar k1 = grid.wavenumber(i);
            part.xi_abs(i, j) = std::hypot(k1, k2);
            xi_max = std::max(xi_max, part.xi_abs(i, j));
        }
    }
    const Scalar xi_min = Scalar(2) * std::numbers::pi_v<Scalar> / grid.box_length;

    // j_min: the lowest shell whose phi touches a nonzero lattice frequency.
    // j_max: the smallest index whose telescoped tail already covers the
    // resolved (dealiased) disk, i.e. (3/4) 2^{j_max+1} >= xi_dealias; the
    // partition then sums to one exactly on the whole resolved band.
    const int j_lo = static_cast<int>(std::floor(std::log2(static_cast<double>(xi_min) * 3.0 / 8.0)));
    const int j_hi = static_cast<int>(std::ceil(std::log2(static_cast<double>(xi_max) * 4.0 / 3.0)));
    int first = 0;
    bool any = false;
    for (int j = j_lo; j <= j_hi && !any; ++j) {
        const Scalar scale = std::ldexp(Scalar(1), -j);
        for (int c = 0; c < n * n && !any; ++c)
            any = dyadic_phi(part.xi_abs(c / n, c % n) * scale) > Scalar(0);
        if (any) first = j;
    }
    if (!any) throw ConfigurationError("dyadic partition: grid hosts no dyadic shell");
    part.j_min = first;

    const Scalar xi_dealias = xi_min * Scalar(grid.dealias_mode_max());
    int top = part.j_min + 1;
    while (Scalar(0.75) * std::ldexp(Scalar(1), top + 1) < xi_dealias) ++top;
    part.j_max = top;
    if (part.shell_count() < 3)
        throw ConfigurationError("dyadic partition: grid too coarse to host 3 shells");

    part.rising.reserve(static_cast<size_t>(part.j_max - part.j_min + 3));
    for (int j = part.j_min - 1; j <= part.j_max + 1; ++j) {
        const Scalar scale = std::ldexp(Scalar(1), -j);
        RealArray<Scalar> r(n, n);
        for (int c = 0; c < n * n; ++c)
            r(c / n, c % n) = dyadic_rising_edge(part.xi_abs(c / n, c % n) * scale);
        part.rising.push_back(std::move(r));
    }
    return part;
}

// ---------------------------------------------------------------------------
// Frequency localization operators
// ---------------------------------------------------------------------------

// Dyadic block: coefficients multiplied by phi(2^{-j}|xi|).
template <typename Scalar>
SpectralField<Scalar> dyadic_block(const SpectralField<Scalar>& u, int j,
                                   const DyadicPartition<Scalar>& part) {
    RealArray<Scalar> phi = part.phi_samples(j);
    SpectralField<Scalar> out = u;
    for (int c = 0; c < u.components; ++c)
        out.comp(c) *= phi.template cast<std::complex<Scalar>>();
    return out;
}

// Low-frequency cutoff: coefficients multiplied by chi(2^{-j}|xi|).
template <typename Scalar>
SpectralField<Scalar> low_cutoff(const SpectralField<Scalar>& u, int j,
                                 const DyadicPartition<Scalar>& part) {
    RealArray<Scalar> chi = part.chi_samples(j);
    SpectralField<Scalar> out = u;
    for (int c = 0; c < u.components; ++c)
        out.comp(c) *= chi.template cast<std::complex<Scalar>>();
    return out;
}

// ---------------------------------------------------------------------------
// Besov norms
// ---------------------------------------------------------------------------

// Norm descriptor for B^s_{p,r}: regularity s, integrability p, summation r.
template <typename Scalar>
struct NormSpec {
    Scalar s = 0;
    Scalar p = 2;
    Scalar r = 1;

    NormSpec() = default;
    NormSpec(Scalar s_, Scalar p_, Scalar r_) : s(s_), p(p_), r(r_) {
        if (!(p >= Scalar(1)) || !(r >= Scalar(1)))
            throw DomainError("norm spec: p and r must lie in [1, inf]");
    }
};

// Per-shell L^p norms ||Delta_j u||_{L^p} for j = j_min..j_max.
//
// Low-frequency convention: the chi block is folded into shell j_min and the
// zero mode is dropped (homogeneous norms ignore constants; on the torus the
// mean is reported separately by callers that need it). For p == 2 the shell
// norm is evaluated in coefficient space via Parseval, avoiding a transform.
template <typename Scalar>
std::vector<Scalar> shell_lp_norms(const SpectralField<Scalar>& u,
                                   const DyadicPartition<Scalar>& part, Scalar p) {
    std::vector<Scalar> norms;
    norms.reserve(static_cast<size_t>(part.shell_count()));
    const Scalar n2 = Scalar(u.grid.n) * Scalar(u.grid.n);
    for (int j = part.j_min; j <= part.j_max; ++j) {
        RealArray<Scalar> mult = part.phi_samples(j);
        if (j == part.j_min) {
            mult += part.chi_samples(part.j_min);
            mult(0, 0) = Scalar(0);
        }
        if (p == Scalar(2)) {
            Scalar sum = 0;
            for (int c = 0; c < u.components; ++c)
                sum += (u.comp(c).abs2() * mult.square()).sum();
            norms.push_back(u.grid.box_length / n2 * std::sqrt(sum));
        } else {
            SpectralField<Scalar> block = u;
            for (int c = 0; c < u.components; ++c)
                block.comp(c) *= mult.template cast<std::complex<Scalar>>();
            norms.push_back(lp_norm(block, p));
        }
    }
    return norms;
}

// l^r aggregation of the weighted shell norms 2^{js} b_j.
template <typename Scalar>
Scalar aggregate_shells(const std::vector<Scalar>& shell_norms, int j_min, Scalar s, Scalar r) {
    Scalar acc = 0;
    for (size_t idx = 0; idx < shell_norms.size(); ++idx) {
        const int j = j_min + static_cast<int>(idx);
        const Scalar term = std::pow(Scalar(2), s * Scalar(j)) * shell_norms[idx];
        if (std::isinf(static_cast<double>(r)))
            acc = std::max(acc, term);
        else
            acc += std::pow(term, r);
    }
    return std::isinf(static_cast<double>(r)) ? acc : std::pow(acc, Scalar(1) / r);
}

// Homogeneous Besov norm ||u||_{B^s_{p,r}} over the resolved shells.
template <typename Scalar>
Scalar besov_norm(const SpectralField<Scalar>& u, const NormSpec<Scalar>& spec,
                  const DyadicPartition<Scalar>& part) {
    return aggregate_shells(shell_lp_norms(u, part, spec.p), part.j_min, spec.s, spec.r);
}

}  // namespace lpns2d
