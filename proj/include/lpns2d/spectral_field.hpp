#pragma once

#include <array>
#include <complex>

#include "lpns2d/fft.hpp"
#include "lpns2d/grid.hpp"

namespace lpns2d {

// Doubly periodic scalar or 2-component vector field, carried by its Fourier
// coefficients. Coefficients are the single source of truth; grid samples are
// produced on demand by to_physical.
//
// Transform convention (pinned for golden tests): unnormalized forward DFT,
// (1/n^2)-scaled inverse. A constant field c has zero-mode coefficient c*n^2.
template <typename Scalar>
struct SpectralField {
    using Complex = std::complex<Scalar>;

    Grid<Scalar> grid;
    int components = 1;                       // 1 scalar, 2 vector
    std::array<ComplexArray<Scalar>, 2> coeff;
    bool real_parity = true;                  // physical samples are real
    bool solenoidal = false;                  // set by the Leray projector

    SpectralField() = default;

    SpectralField(const Grid<Scalar>& g, int comps) : grid(g), components(comps) {
        if (comps != 1 && comps != 2)
            throw DimensionError("spectral field: components must be 1 or 2");
        for (int c = 0; c < components; ++c)
            coeff[static_cast<size_t>(c)] = ComplexArray<Scalar>::Zero(g.n, g.n);
    }

    static SpectralField scalar(const Grid<Scalar>& g) { return SpectralField(g, 1); }
    static SpectralField vector(const Grid<Scalar>& g) { return SpectralField(g, 2); }

    ComplexArray<Scalar>& comp(int c) { return coeff[static_cast<size_t>(c)]; }
    const ComplexArray<Scalar>& comp(int c) const { return coeff[static_cast<size_t>(c)]; }

    bool is_scalar() const { return components == 1; }

    SpectralField& operator+=(const SpectralField& other) {
        require_compatible(other);
        for (int c = 0; c < components; ++c) comp(c) += other.comp(c);
        solenoidal = solenoidal && other.solenoidal;
        return *this;
    }
    SpectralField& operator-=(const SpectralField& other) {
        require_compatible(other);
        for (int c = 0; c < components; ++c) comp(c) -= other.comp(c);
        solenoidal = solenoidal && other.solenoidal;
        return *this;
    }
    SpectralField& operator*=(Scalar s) {
        for (int c = 0; c < components; ++c) comp(c) *= s;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(Scalar s, SpectralField a) { return a *= s; }

    void require_compatible(const SpectralField& other) const {
        if (!(grid == other.grid) || components != other.components)
            throw DimensionError("spectral field: incompatible grid or component count");
    }
};

// Physical-space counterpart: real samples, samples(i, j) = f(x1_i, x2_j).
template <typename Scalar>
struct PhysicalField {
    Grid<Scalar> grid;
    int components = 1;
    std::array<RealArray<Scalar>, 2> values;

    PhysicalField() = default;
    PhysicalField(const Grid<Scalar>& g, int comps) : grid(g), components(comps) {
        for (int c = 0; c < components; ++c)
            values[static_cast<size_t>(c)] = RealArray<Scalar>::Zero(g.n, g.n);
    }

    RealArray<Scalar>& comp(int c) { return values[static_cast<size_t>(c)]; }
    const RealArray<Scalar>& comp(int c) const { return values[static_cast<size_t>(c)]; }
};

template <typename Scalar>
PhysicalField<Scalar> to_physical(const SpectralField<Scalar>& f) {
    PhysicalField<Scalar> out(f.grid, f.components);
    ComplexArray<Scalar> work;
    for (int c = 0; c < f.components; ++c) {
        work = f.comp(c);
        fft2_inverse(work);
        out.comp(c) = work.real();
    }
    return out;
}

template <typename Scalar>
SpectralField<Scalar> to_spectral(const PhysicalField<Scalar>& samples) {
    SpectralField<Scalar> out(samples.grid, samples.components);
    for (int c = 0; c < samples.components; ++c) {
        out.comp(c) = samples.comp(c).template cast<std::complex<Scalar>>();
        fft2_forward(out.comp(c));
    }
    return out;
}

template <typename Scalar>
SpectralField<Scalar> to_spectral(const RealArray<Scalar>& samples, const Grid<Scalar>& grid) {
    if (samples.rows() != grid.n || samples.cols() != grid.n)
        throw DimensionError("to_spectral: sample array size does not match grid");
    PhysicalField<Scalar> p(grid, 1);
    p.comp(0) = samples;
    return to_spectral(p);
}

using SpectralFieldd = SpectralField<double>;
using PhysicalFieldd = PhysicalField<double>;

}  // namespace lpns2d
