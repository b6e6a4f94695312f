#pragma once

#include <random>

#include "lpns2d/operators.hpp"

namespace lpns2d {

// Deterministic band-limited random fields for tests, property harnesses and
// the multiplier dictionary. All draws go through std::mt19937_64 with an
// explicit seed, fixed traversal order.

// Smooth random scalar: white noise shaped by exp(-(|k|/k_cut)^2), then
// dealiased. k_cut defaults to a quarter of the dealias band.
template <typename Scalar>
SpectralField<Scalar> random_scalar_field(const Grid<Scalar>& grid, std::mt19937_64& rng,
                                          Scalar mode_cut_fraction = Scalar(0.25),
                                          bool zero_mean = false) {
    std::normal_distribution<Scalar> gauss(Scalar(0), Scalar(1));
    PhysicalField<Scalar> noise(grid, 1);
    for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i) noise.comp(0)(i, j) = gauss(rng);

    SpectralField<Scalar> f = to_spectral(noise);
    const Scalar m_cut = std::max(Scalar(1), mode_cut_fraction * Scalar(grid.dealias_mode_max()));
    for (int j = 0; j < grid.n; ++j) {
        for (int i = 0; i < grid.n; ++i) {
            const Scalar m1 = Scalar(grid.mode(i)), m2 = Scalar(grid.mode(j));
            const Scalar m = std::sqrt(m1 * m1 + m2 * m2);
            f.comp(0)(i, j) *= std::exp(-(m / m_cut) * (m / m_cut));
        }
    }
    dealias_in_place(f);
    if (zero_mean) f.comp(0)(0, 0) = std::complex<Scalar>(0, 0);

    // Normalize to unit L^2 so tolerances read as relative errors.
    const Scalar nrm = l2_norm_spectral(f);
    if (nrm > Scalar(0)) f *= Scalar(1) / nrm;
    return f;
}

// Flat-spectrum random scalar: dealiased white noise, unit L^2. Shell blocks
// of this field have the same spectral profile at every scale, which keeps
// per-shell fitted constants comparable.
template <typename Scalar>
SpectralField<Scalar> white_scalar_field(const Grid<Scalar>& grid, std::mt19937_64& rng,
                                         bool zero_mean = true) {
    std::normal_distribution<Scalar> gauss(Scalar(0), Scalar(1));
    PhysicalField<Scalar> noise(grid, 1);
    for (int j = 0; j < grid.n; ++j)
        for (int i = 0; i < grid.n; ++i) noise.comp(0)(i, j) = gauss(rng);
    SpectralField<Scalar> f = to_spectral(noise);
    dealias_in_place(f);
    if (zero_mean) f.comp(0)(0, 0) = std::complex<Scalar>(0, 0);
    const Scalar nrm = l2_norm_spectral(f);
    if (nrm > Scalar(0)) f *= Scalar(1) / nrm;
    return f;
}

// White noise hard-banded to lo <= |xi| <= hi; empty bands come back zero.
template <typename Scalar>
SpectralField<Scalar> banded_scalar_field(const Grid<Scalar>& grid, std::mt19937_64& rng,
                                          Scalar xi_lo, Scalar xi_hi) {
    SpectralField<Scalar> f = white_scalar_field(grid, rng);
    for (int j = 0; j < grid.n; ++j) {
        const Scalar k2 = grid.wavenumber(j);
        for (int i = 0; i < grid.n; ++i) {
            const Scalar xi = std::hypot(grid.wavenumber(i), k2);
            if (xi < xi_lo || xi > xi_hi) f.comp(0)(i, j) = std::complex<Scalar>(0, 0);
        }
    }
    const Scalar nrm = l2_norm_spectral(f);
    if (nrm > Scalar(0)) f *= Scalar(1) / nrm;
    return f;
}

// Random wave packet localized in shell j: a carrier mode |k| ~ 1.4 * 2^j at
// a random angle, modulated by a periodized Gaussian whose width scales like
// 2^{-j}. Packets at different shells are dyadic rescalings of one another
// (up to lattice snap), so shell-indexed constants fitted on them are
// directly comparable.
template <typename Scalar>
SpectralField<Scalar> wave_packet_field(const Grid<Scalar>& grid, std::mt19937_64& rng, int j,
                                        Scalar freq_width_ratio = Scalar(0.8)) {
    const Scalar lam = std::ldexp(Scalar(1), j);
    const Scalar xi0 = Scalar(2) * std::numbers::pi_v<Scalar> / grid.box_length;
    std::uniform_real_distribution<Scalar> uangle(0, Scalar(2) * std::numbers::pi_v<Scalar>);
    std::uniform_real_distribution<Scalar> upos(0, grid.box_length);

    // snap the carrier to the closest lattice mode in the middle of the ring
    int m1 = 0, m2 = 0;
    for (int attempt = 0; attempt < 64 && m1 == 0 && m2 == 0; ++attempt) {
        const Scalar theta = uangle(rng);
        const Scalar radius = Scalar(1.4) * lam / xi0;
        const int c1 = static_cast<int>(std::lround(radius * std::cos(theta)));
        const int c2 = static_cast<int>(std::lround(radius * std::sin(theta)));
        const Scalar ratio = std::hypot(Scalar(c1), Scalar(c2)) * xi0 / lam;
        if ((c1 != 0 || c2 != 0) && ratio > Scalar(0.8) && ratio < Scalar(2.5)) {
            m1 = c1;
            m2 = c2;
        }
    }
    if (m1 == 0 && m2 == 0) {
        // shell too sparse for an angled carrier; fall back to the axis mode
        m1 = std::max(1, static_cast<int>(std::lround(Scalar(1.4) * lam / xi0)));
    }

    const Scalar k1 = xi0 * Scalar(m1), k2 = xi0 * Scalar(m2);
    const Scalar x01 = upos(rng), x02 = upos(rng);
    const Scalar phase = uangle(rng);
    const Scalar L = grid.box_length;
    // envelope capped at a sixth of the box so periodization tails stay small
    const Scalar sigma = std::min(Scalar(1) / (freq_width_ratio * lam), L / Scalar(6));

    auto wrap = [L](Scalar d) {
        d = std::fmod(d, L);
        if (d > L / 2) d -= L;
        if (d < -L / 2) d += L;
        return d;
    };

    PhysicalField<Scalar> p(grid, 1);
    for (int jj = 0; jj < grid.n; ++jj) {
        const Scalar dy = wrap(grid.coord(jj) - x02);
        for (int ii = 0; ii < grid.n; ++ii) {
            const Scalar dx = wrap(grid.coord(ii) - x01);
            const Scalar env = std::exp(-(dx * dx + dy * dy) / (Scalar(2) * sigma * sigma));
            p.comp(0)(ii, jj) = std::cos(k1 * dx + k2 * dy + phase) * env;
        }
    }
    SpectralField<Scalar> f = to_spectral(p);
    dealias_in_place(f);
    f.comp(0)(0, 0) = std::complex<Scalar>(0, 0);
    const Scalar nrm = l2_norm_spectral(f);
    if (nrm > Scalar(0)) f *= Scalar(1) / nrm;
    return f;
}

// Random solenoidal vector field (Leray projection of two random scalars).
template <typename Scalar>
SpectralField<Scalar> random_solenoidal_field(const Grid<Scalar>& grid, std::mt19937_64& rng,
                                              Scalar mode_cut_fraction = Scalar(0.25)) {
    SpectralField<Scalar> u = SpectralField<Scalar>::vector(grid);
    u.comp(0) = random_scalar_field(grid, rng, mode_cut_fraction, true).comp(0);
    u.comp(1) = random_scalar_field(grid, rng, mode_cut_fraction, true).comp(0);
    u = leray_project(u);
    const Scalar nrm = l2_norm_spectral(u);
    if (nrm > Scalar(0)) u *= Scalar(1) / nrm;
    return u;
}

}  // namespace lpns2d
