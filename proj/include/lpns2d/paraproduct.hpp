#pragma once

#include "lpns2d/littlewood_paley.hpp"

namespace lpns2d {

// Bony decomposition on the resolved shells:
//   u v = T_u v + T_v u + R(u, v)
// with T_u v = sum_j S_{j-1} u * Delta_j v and R the diagonal interactions
// |j - j'| <= 1. The block list is the chi block (treated as the slot below
// j_min) plus the phi shells, so the three pieces partition every block pair
// exactly and reconstruction is exact for dealiased inputs.

// Paraproduct T_u v (scalar fields).
template <typename Scalar>
SpectralField<Scalar> paraproduct(const SpectralField<Scalar>& u, const SpectralField<Scalar>& v,
                                  const DyadicPartition<Scalar>& part) {
    if (!(u.grid == v.grid)) throw DimensionError("paraproduct: grid mismatch");
    SpectralField<Scalar> acc = SpectralField<Scalar>::scalar(u.grid);
    for (int j = part.j_min; j <= part.j_max; ++j) {
        SpectralField<Scalar> low = low_cutoff(u, j - 1, part);
        SpectralField<Scalar> high = dyadic_block(v, j, part);
        acc += multiply(low, high);
    }
    return acc;
}

// Remainder R(u, v): shell pairs within one index of each other, plus the
// product of the two chi blocks. On the resolved partition the chi block is
// exactly the zero mode; its cross terms with the phi shells already live in
// the paraproducts (every S_{j-1} carries the mean), so pairing it only with
// itself keeps the three pieces an exact partition of the block pairs.
template <typename Scalar>
SpectralField<Scalar> remainder(const SpectralField<Scalar>& u, const SpectralField<Scalar>& v,
                                const DyadicPartition<Scalar>& part) {
    if (!(u.grid == v.grid)) throw DimensionError("remainder: grid mismatch");

    SpectralField<Scalar> acc =
        multiply(low_cutoff(u, part.j_min, part), low_cutoff(v, part.j_min, part));
    for (int j = part.j_min; j <= part.j_max; ++j) {
        SpectralField<Scalar> bu = dyadic_block(u, j, part);
        for (int jp = std::max(part.j_min, j - 1); jp <= std::min(part.j_max, j + 1); ++jp)
            acc += multiply(bu, dyadic_block(v, jp, part));
    }
    return acc;
}

}  // namespace lpns2d
