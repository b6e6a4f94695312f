#pragma once

#include <cmath>

#include "lpns2d/spectral_field.hpp"

namespace lpns2d {

// Periodic bicubic interpolation (tensor-product 4-point Lagrange stencil).
// Fourth-order accurate on smooth data; reproduces cubics exactly.
template <typename Scalar>
class BicubicSampler {
public:
    explicit BicubicSampler(const PhysicalField<Scalar>& field) : f_(&field) {}

    // Value of component c at physical position (x1, x2); positions wrap.
    Scalar operator()(int c, Scalar x1, Scalar x2) const {
        const auto& g = f_->grid;
        const Scalar h = g.spacing();
        const Scalar s1 = x1 / h, s2 = x2 / h;
        const int i0 = static_cast<int>(std::floor(s1));
        const int j0 = static_cast<int>(std::floor(s2));
        const Scalar t1 = s1 - Scalar(i0);
        const Scalar t2 = s2 - Scalar(j0);

        Scalar w1[4], w2[4];
        lagrange_weights(t1, w1);
        lagrange_weights(t2, w2);

        const auto& a = f_->comp(c);
        const int n = g.n;
        Scalar acc = 0;
        for (int dj = -1; dj <= 2; ++dj) {
            const int j = wrap(j0 + dj, n);
            Scalar row = 0;
            for (int di = -1; di <= 2; ++di)
                row += w1[di + 1] * a(wrap(i0 + di, n), j);
            acc += w2[dj + 1] * row;
        }
        return acc;
    }

private:
    static int wrap(int i, int n) {
        i %= n;
        return i < 0 ? i + n : i;
    }

    // Cubic Lagrange weights for nodes {-1, 0, 1, 2} at offset t in [0, 1).
    static void lagrange_weights(Scalar t, Scalar w[4]) {
        const Scalar t2 = t * t, t3 = t2 * t;
        w[0] = (-t3 + Scalar(3) * t2 - Scalar(2) * t) / Scalar(6);
        w[1] = (t3 - Scalar(2) * t2 - t + Scalar(2)) / Scalar(2);
        w[2] = (-t3 + t2 + Scalar(2) * t) / Scalar(2);
        w[3] = (t3 - t) / Scalar(6);
    }

    const PhysicalField<Scalar>* f_;
};

}  // namespace lpns2d
