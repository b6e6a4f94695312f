#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "lpns2d/spectral_field.hpp"

namespace lpns2d {

// ---------------------------------------------------------------------------
// Differential operators (diagonal symbols on the frequency lattice)
// ---------------------------------------------------------------------------

// d^order/dx_axis^order: multiply coefficients by (i k_axis)^order.
// The Nyquist line is zeroed for odd orders; the mode m = -n/2 has no
// symmetric partner, and keeping it would break real parity.
template <typename Scalar>
SpectralField<Scalar> derivative(const SpectralField<Scalar>& f, int axis, int order = 1) {
    if (axis != 1 && axis != 2) throw DimensionError("derivative: axis must be 1 or 2");
    if (order < 1) throw DimensionError("derivative: order must be positive");
    const int n = f.grid.n;
    const bool odd = (order % 2) != 0;

    Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, 1> symbol(n);
    for (int i = 0; i < n; ++i) {
        if (odd && f.grid.mode(i) == -n / 2) {
            symbol(i) = std::complex<Scalar>(0, 0);
            continue;
        }
        const std::complex<Scalar> ik(0, f.grid.wavenumber(i));
        std::complex<Scalar> s(1, 0);
        for (int o = 0; o < order; ++o) s *= ik;
        symbol(i) = s;
    }

    SpectralField<Scalar> out = f;
    out.solenoidal = false;
    for (int c = 0; c < f.components; ++c) {
        if (axis == 1)
            out.comp(c).colwise() *= symbol;
        else
            out.comp(c).rowwise() *= symbol.transpose();
    }
    return out;
}

template <typename Scalar>
SpectralField<Scalar> laplacian(const SpectralField<Scalar>& f) {
    SpectralField<Scalar> out = derivative(f, 1, 2);
    out += derivative(f, 2, 2);
    out.solenoidal = f.solenoidal;
    return out;
}

// grad of a scalar -> vector field.
template <typename Scalar>
SpectralField<Scalar> gradient(const SpectralField<Scalar>& f) {
    if (!f.is_scalar()) throw DimensionError("gradient: expects a scalar field");
    SpectralField<Scalar> out = SpectralField<Scalar>::vector(f.grid);
    out.comp(0) = derivative(f, 1).comp(0);
    out.comp(1) = derivative(f, 2).comp(0);
    return out;
}

// div of a vector -> scalar field.
template <typename Scalar>
SpectralField<Scalar> divergence(const SpectralField<Scalar>& u) {
    if (u.components != 2) throw DimensionError("divergence: expects a vector field");
    SpectralField<Scalar> out = SpectralField<Scalar>::scalar(u.grid);
    SpectralField<Scalar> c0 = SpectralField<Scalar>::scalar(u.grid);
    c0.comp(0) = u.comp(0);
    SpectralField<Scalar> c1 = SpectralField<Scalar>::scalar(u.grid);
    c1.comp(0) = u.comp(1);
    out.comp(0) = derivative(c0, 1).comp(0) + derivative(c1, 2).comp(0);
    return out;
}

// (-Laplace)^{-1}: divide by |k|^2, zero mode pinned to 0.
template <typename Scalar>
SpectralField<Scalar> inverse_neg_laplacian(const SpectralField<Scalar>& f) {
    const int n = f.grid.n;
    SpectralField<Scalar> out = f;
    for (int c = 0; c < f.components; ++c) {
        for (int j = 0; j < n; ++j) {
            const Scalar k2j = f.grid.wavenumber(j) * f.grid.wavenumber(j);
            for (int i = 0; i < n; ++i) {
                const Scalar k2 = f.grid.wavenumber(i) * f.grid.wavenumber(i) + k2j;
                out.comp(c)(i, j) = (k2 > Scalar(0)) ? f.comp(c)(i, j) / k2
                                                     : std::complex<Scalar>(0, 0);
            }
        }
    }
    return out;
}

// Leray projection onto divergence-free fields:
//   u_hat(k) -> u_hat(k) - k (k . u_hat(k)) / |k|^2,  zero mode passed through.
template <typename Scalar>
SpectralField<Scalar> leray_project(const SpectralField<Scalar>& u) {
    if (u.components != 2) throw DimensionError("leray_project: expects a vector field");
    const int n = u.grid.n;
    SpectralField<Scalar> out = u;
    for (int j = 0; j < n; ++j) {
        const Scalar k2 = u.grid.wavenumber(j);
        for (int i = 0; i < n; ++i) {
            const Scalar k1 = u.grid.wavenumber(i);
            const Scalar ksq = k1 * k1 + k2 * k2;
            if (ksq == Scalar(0)) continue;
            const std::complex<Scalar> kdotu =
                (k1 * u.comp(0)(i, j) + k2 * u.comp(1)(i, j)) / ksq;
            out.comp(0)(i, j) -= k1 * kdotu;
            out.comp(1)(i, j) -= k2 * kdotu;
        }
    }
    out.solenoidal = true;
    return out;
}

// ---------------------------------------------------------------------------
// Dealiasing and products
// ---------------------------------------------------------------------------

// Isotropic 2/3-rule truncation: zero every mode with |m| > n/3 (Euclidean).
// Applied after every pointwise product so the dyadic shells stay clean; the
// kept disk receives no aliased images since 3 * floor(n/3) < n.
template <typename Scalar>
void dealias_in_place(SpectralField<Scalar>& f) {
    const int n = f.grid.n;
    for (int c = 0; c < f.components; ++c)
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                if (!f.grid.in_resolved_band(i, j)) f.comp(c)(i, j) = std::complex<Scalar>(0, 0);
}

template <typename Scalar>
SpectralField<Scalar> dealias(SpectralField<Scalar> f) {
    dealias_in_place(f);
    return f;
}

// Pointwise product of two scalar fields, dealiased.
template <typename Scalar>
SpectralField<Scalar> multiply(const SpectralField<Scalar>& a, const SpectralField<Scalar>& b) {
    if (!a.is_scalar() || !b.is_scalar())
        throw DimensionError("multiply: expects scalar fields");
    if (!(a.grid == b.grid)) throw DimensionError("multiply: grid mismatch");
    PhysicalField<Scalar> pa = to_physical(a);
    PhysicalField<Scalar> pb = to_physical(b);
    pa.comp(0) *= pb.comp(0);
    SpectralField<Scalar> out = to_spectral(pa);
    dealias_in_place(out);
    return out;
}

// Scalar times vector, componentwise, dealiased.
template <typename Scalar>
SpectralField<Scalar> multiply_scalar_vector(const SpectralField<Scalar>& s,
                                             const SpectralField<Scalar>& u) {
    if (!s.is_scalar() || u.components != 2)
        throw DimensionError("multiply_scalar_vector: wants (scalar, vector)");
    PhysicalField<Scalar> ps = to_physical(s);
    PhysicalField<Scalar> pu = to_physical(u);
    pu.comp(0) *= ps.comp(0);
    pu.comp(1) *= ps.comp(0);
    SpectralField<Scalar> out = to_spectral(pu);
    out.components = 2;
    dealias_in_place(out);
    return out;
}

// Advection term u . grad f for scalar or vector f, dealiased.
template <typename Scalar>
SpectralField<Scalar> advection_term(const SpectralField<Scalar>& u,
                                     const SpectralField<Scalar>& f) {
    if (u.components != 2) throw DimensionError("advection_term: u must be a vector");
    PhysicalField<Scalar> pu = to_physical(u);
    PhysicalField<Scalar> out(f.grid, f.components);
    for (int c = 0; c < f.components; ++c) {
        SpectralField<Scalar> fc = SpectralField<Scalar>::scalar(f.grid);
        fc.comp(0) = f.comp(c);
        PhysicalField<Scalar> d1 = to_physical(derivative(fc, 1));
        PhysicalField<Scalar> d2 = to_physical(derivative(fc, 2));
        out.comp(c) = pu.comp(0) * d1.comp(0) + pu.comp(1) * d2.comp(0);
    }
    SpectralField<Scalar> spec = to_spectral(out);
    spec.components = f.components;
    dealias_in_place(spec);
    return spec;
}

// ---------------------------------------------------------------------------
// Norms and reductions
// ---------------------------------------------------------------------------

inline constexpr double kInfinityExponent = std::numeric_limits<double>::infinity();

// L^p norm by equal-weight grid quadrature (exact trapezoid on the torus),
// normalized so that ||1||_{L^p} = L^{2/p}. Vector fields use the pointwise
// Euclidean magnitude; p = infinity returns the max over grid points.
template <typename Scalar>
Scalar lp_norm(const PhysicalField<Scalar>& f, Scalar p) {
    if (!(p >= Scalar(1)))
        throw DomainError("lp_norm: exponent must satisfy p >= 1");
    RealArray<Scalar> mag;
    if (f.components == 1)
        mag = f.comp(0).abs();
    else
        mag = (f.comp(0).square() + f.comp(1).square()).sqrt();

    if (std::isinf(static_cast<double>(p))) return mag.maxCoeff();
    const Scalar cell = f.grid.spacing() * f.grid.spacing();
    if (p == Scalar(2)) return std::sqrt((mag.square().sum()) * cell);
    return std::pow((mag.pow(p)).sum() * cell, Scalar(1) / p);
}

template <typename Scalar>
Scalar lp_norm(const SpectralField<Scalar>& f, Scalar p) {
    return lp_norm(to_physical(f), p);
}

// L^2 norm straight from coefficients (Parseval for the pinned convention).
template <typename Scalar>
Scalar l2_norm_spectral(const SpectralField<Scalar>& f) {
    const Scalar n2 = Scalar(f.grid.n) * Scalar(f.grid.n);
    Scalar sum = 0;
    for (int c = 0; c < f.components; ++c) sum += f.comp(c).abs2().sum();
    return f.grid.box_length / n2 * std::sqrt(sum);
}

template <typename Scalar>
Scalar sup_norm(const SpectralField<Scalar>& f) {
    return lp_norm(f, std::numeric_limits<Scalar>::infinity());
}

template <typename Scalar>
Scalar mean_value(const SpectralField<Scalar>& f) {
    if (!f.is_scalar()) throw DimensionError("mean_value: expects a scalar field");
    const Scalar n2 = Scalar(f.grid.n) * Scalar(f.grid.n);
    return f.comp(0)(0, 0).real() / n2;
}

template <typename Scalar>
Scalar integral(const SpectralField<Scalar>& f) {
    return mean_value(f) * f.grid.box_length * f.grid.box_length;
}

// Deviation from Hermitian symmetry u_hat(-k) = conj(u_hat(k)), relative to
// the largest coefficient. Zero exactly when the physical samples are real.
template <typename Scalar>
Scalar hermitian_symmetry_error(const SpectralField<Scalar>& f) {
    const int n = f.grid.n;
    Scalar worst = 0, scale = 0;
    for (int c = 0; c < f.components; ++c) {
        for (int j = 0; j < n; ++j) {
            const int jm = (n - j) % n;
            for (int i = 0; i < n; ++i) {
                const int im = (n - i) % n;
                scale = std::max(scale, std::abs(f.comp(c)(i, j)));
                worst = std::max(worst,
                                 std::abs(f.comp(c)(i, j) - std::conj(f.comp(c)(im, jm))));
            }
        }
    }
    return scale > Scalar(0) ? worst / scale : Scalar(0);
}

// Relative divergence of a vector field measured on coefficients:
//   max_k |k . u_hat(k)| / max_k |u_hat(k)|.
template <typename Scalar>
Scalar relative_divergence(const SpectralField<Scalar>& u) {
    if (u.components != 2) throw DimensionError("relative_divergence: expects a vector");
    const int n = u.grid.n;
    Scalar num = 0, den = 0;
    for (int j = 0; j < n; ++j) {
        const Scalar k2 = u.grid.wavenumber(j);
        for (int i = 0; i < n; ++i) {
            const Scalar k1 = u.grid.wavenumber(i);
            num = std::max(num, std::abs(k1 * u.comp(0)(i, j) + k2 * u.comp(1)(i, j)));
            den = std::max({den, std::abs(u.comp(0)(i, j)), std::abs(u.comp(1)(i, j))});
        }
    }
    return den > Scalar(0) ? num / den : Scalar(0);
}

// Enforces |k . u_hat| <= tol * max |u_hat| or throws.
template <typename Scalar>
void require_solenoidal(const SpectralField<Scalar>& u, Scalar tol = Scalar(1e-8)) {
    const Scalar rel = relative_divergence(u);
    if (rel > tol)
        throw StateError("vector field is not solenoidal: relative divergence " +
                         std::to_string(static_cast<double>(rel)));
}

// Fraction of the |f| mass carried within 10% of the box edge; large values
// flag that the compactly-concentrated data assumption is breaking down and
// torus wrap-around is polluting the norms.
template <typename Scalar>
Scalar wrap_around_indicator(const SpectralField<Scalar>& f) {
    PhysicalField<Scalar> p = to_physical(f);
    const Scalar L = f.grid.box_length;
    Scalar edge = 0, total = 0;
    for (int j = 0; j < f.grid.n; ++j) {
        const Scalar y = f.grid.coord(j);
        const bool y_edge = y < Scalar(0.1) * L || y > Scalar(0.9) * L;
        for (int i = 0; i < f.grid.n; ++i) {
            const Scalar x = f.grid.coord(i);
            Scalar mag = 0;
            for (int c = 0; c < f.components; ++c) mag += std::abs(p.comp(c)(i, j));
            total += mag;
            if (y_edge || x < Scalar(0.1) * L || x > Scalar(0.9) * L) edge += mag;
        }
    }
    return total > Scalar(0) ? edge / total : Scalar(0);
}

template <typename Scalar>
SpectralField<Scalar> component(const SpectralField<Scalar>& u, int c) {
    SpectralField<Scalar> out = SpectralField<Scalar>::scalar(u.grid);
    out.comp(0) = u.comp(c);
    return out;
}

// Symmetric gradient M(u) = (d_i u_j + d_j u_i) / 2; returns (M11, M12, M22).
template <typename Scalar>
std::array<SpectralField<Scalar>, 3> symmetric_gradient(const SpectralField<Scalar>& u) {
    if (u.components != 2) throw DimensionError("symmetric_gradient: expects a vector");
    SpectralField<Scalar> u1 = component(u, 0), u2 = component(u, 1);
    SpectralField<Scalar> m11 = derivative(u1, 1);
    SpectralField<Scalar> m22 = derivative(u2, 2);
    SpectralField<Scalar> m12 = derivative(u1, 2);
    m12 += derivative(u2, 1);
    m12 *= Scalar(0.5);
    return {m11, m12, m22};
}

}  // namespace lpns2d
