#pragma once

#include <cmath>
#include <numbers>

#include "lpns2d/errors.hpp"

namespace lpns2d {

// Uniform periodic grid on the square torus [0, L)^2 with n points per axis.
//
// The frequency lattice is {2*pi*m/L : m in [-n/2, n/2)^2}, stored in the
// usual FFT wrap order (m = 0, 1, ..., n/2-1, -n/2, ..., -1).
template <typename Scalar>
struct Grid {
    int n = 0;
    Scalar box_length = Scalar(0);

    Grid() = default;
    Grid(int points, Scalar length) : n(points), box_length(length) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw ConfigurationError("grid: n must be a power of two, n >= 8");
        if (!(box_length > Scalar(0)))
            throw ConfigurationError("grid: box length must be positive");
    }

    Scalar spacing() const { return box_length / Scalar(n); }

    // Signed integer mode for FFT storage index i in [0, n).
    int mode(int i) const { return i < n / 2 ? i : i - n; }

    // Physical wavenumber 2*pi*m/L for storage index i.
    Scalar wavenumber(int i) const {
        return Scalar(2) * std::numbers::pi_v<Scalar> * Scalar(mode(i)) / box_length;
    }

    // Largest |m| kept by the 2/3-rule truncation. Truncation is isotropic:
    // a mode survives iff m1^2 + m2^2 <= dealias_mode_max()^2, which keeps
    // the resolved band a disk, commensurate with the dyadic shells.
    int dealias_mode_max() const { return n / 3; }

    bool in_resolved_band(int i, int j) const {
        const long m1 = mode(i), m2 = mode(j);
        const long kmax = dealias_mode_max();
        return m1 * m1 + m2 * m2 <= kmax * kmax;
    }

    Scalar coord(int i) const { return spacing() * Scalar(i); }

    bool operator==(const Grid& other) const {
        return n == other.n && box_length == other.box_length;
    }
};

using Gridd = Grid<double>;

}  // namespace lpns2d
