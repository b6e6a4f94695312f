#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lpns2d/interpolate.hpp"
#include "lpns2d/littlewood_paley.hpp"
#include "testutil.hpp"

#include <cstdio>
#include <vector>

using namespace lpns2d;
using namespace lpns2d::test;

// Constant-stability harnesses: the inequalities carry unspecified constants,
// so each test measures the implied constant per shell (or per case) and
// asserts it is stable — bounded spread across shells, or below a frozen
// regression value recorded from the first calibrated run.

namespace {

struct ShellStats {
    std::vector<int> shells;
    std::vector<double> worst;  // per-shell max ratio

    double spread() const {
        double lo = worst.front(), hi = worst.front();
        for (double w : worst) {
            lo = std::min(lo, w);
            hi = std::max(hi, w);
        }
        return hi / lo;
    }
    double max() const {
        double hi = 0;
        for (double w : worst) hi = std::max(hi, w);
        return hi;
    }
};

// Shells of the (n=128, L=2pi) harness grid whose ring both touches the
// dealiased band and stays clear of the partition edges.
std::vector<int> interior_shells(const DyadicPartition<double>& part) {
    std::vector<int> out;
    for (int j = part.j_min + 1; j <= part.j_max - 1; ++j) out.push_back(j);
    return out;
}

}  // namespace

TEST_CASE("Bernstein: derivative gain 2^j is shell-stable") {
    // Samples are dyadically rescaled wave packets, the family the inequality
    // is sharp on; shells then see statistically identical data and the
    // fitted constants can be compared directly.
    Gridd g(256, 2 * kPi);
    auto part = build_partition(g);
    std::mt19937_64 rng(2024);
    auto shells = interior_shells(part);

    // (p2, p1) pairs with p2 <= p1
    const double pairs[3][2] = {{2, kInfinityExponent}, {2, 4}, {1, 2}};
    for (auto& pq : pairs) {
        const double p2 = pq[0], p1 = pq[1];
        const double gain = 1.0 + 2.0 / p2 - 2.0 / (std::isinf(p1) ? 1e300 : p1);
        ShellStats stats;
        for (int j : shells) {
            double worst = 0;
            for (int s = 0; s < 14; ++s) {
                auto u = dyadic_block(wave_packet_field(g, rng, j), j, part);
                const double den = lp_norm(u, p2);
                if (den < 1e-14) continue;
                auto grad = gradient(u);
                const double num = lp_norm(grad, p1);
                worst = std::max(worst, num / (std::pow(2.0, gain * j) * den));
            }
            stats.shells.push_back(j);
            stats.worst.push_back(worst);
        }
        std::printf("bernstein p2=%g p1=%g: spread %.3f, max const %.4f, per shell:", p2, p1,
                    stats.spread(), stats.max());
        for (size_t k = 0; k < stats.shells.size(); ++k)
            std::printf(" j=%d:%.3g", stats.shells[k], stats.worst[k]);
        std::printf("\n");
        CHECK(stats.spread() < 4.0);
        CHECK(stats.max() < 10.0);  // sanity: the constant itself stays O(1)
    }
}

TEST_CASE("reverse Bernstein: ring data loses 2^{-j} per derivative") {
    Gridd g(256, 2 * kPi);
    auto part = build_partition(g);
    std::mt19937_64 rng(77);
    auto shells = interior_shells(part);

    for (double p1 : {2.0, 4.0}) {
        ShellStats stats;
        for (int j : shells) {
            double worst = 0;
            for (int s = 0; s < 14; ++s) {
                auto u = dyadic_block(wave_packet_field(g, rng, j), j, part);
                const double num = lp_norm(u, p1);
                if (num < 1e-14) continue;
                const double d = std::max(lp_norm(derivative(u, 1), p1),
                                          lp_norm(derivative(u, 2), p1));
                worst = std::max(worst, num * std::pow(2.0, double(j)) / d);
            }
            stats.shells.push_back(j);
            stats.worst.push_back(worst);
        }
        std::printf("reverse bernstein p1=%g: spread %.3f\n", p1, stats.spread());
        CHECK(stats.spread() < 4.0);
    }
}

TEST_CASE("heat kernel: shell decay exponent scales like 4^j") {
    // The bound quantifies over all data spectrally supported in the ring
    // 2^j C, so the harness feeds white noise hard-banded to the sub-ring
    // [0.85, 0.995] * 2^j. Every populated mode then has |xi|^2 between
    // 0.72 * 4^j and 0.99 * 4^j, which brackets the fitted slope for any
    // window. Shells are admitted when the sub-band contains lattice modes.
    Gridd g(256, 2 * kPi * 16);
    auto part = build_partition(g);
    std::mt19937_64 rng(31415);

    std::vector<int> shells;
    std::vector<SpectralFieldd> data;
    for (int j = part.j_min + 1; j <= part.j_max - 1; ++j) {
        const double lam = std::pow(2.0, j);
        auto u = banded_scalar_field(g, rng, 0.85 * lam, 0.995 * lam);
        if (l2_norm_spectral(u) > 0.5) {  // band populated (normalized or zero)
            shells.push_back(j);
            data.push_back(std::move(u));
        }
    }
    REQUIRE(shells.size() >= 4);

    double c_min = 1e300, c_max = 0;
    for (size_t idx = 0; idx < shells.size(); ++idx) {
        const int j = shells[idx];
        auto u = dyadic_block(data[idx], j, part);
        const double e0 = l2_norm_spectral(u);
        REQUIRE(e0 > 1e-14);

        const int samples = 9;
        std::vector<double> ts(samples), logs(samples);
        for (int k = 0; k < samples; ++k) {
            const double t = (2.0 + 3.0 * k / (samples - 1)) * std::pow(4.0, -j);
            SpectralFieldd ut = u;
            for (int jj = 0; jj < g.n; ++jj)
                for (int ii = 0; ii < g.n; ++ii)
                    ut.comp(0)(ii, jj) *= std::exp(-part.xi_abs(ii, jj) * part.xi_abs(ii, jj) * t);
            ts[size_t(k)] = t;
            logs[size_t(k)] = std::log(l2_norm_spectral(ut));
        }
        // least squares slope
        double tm = 0, lm = 0;
        for (int k = 0; k < samples; ++k) tm += ts[size_t(k)], lm += logs[size_t(k)];
        tm /= samples, lm /= samples;
        double num = 0, den = 0;
        for (int k = 0; k < samples; ++k) {
            num += (ts[size_t(k)] - tm) * (logs[size_t(k)] - lm);
            den += (ts[size_t(k)] - tm) * (ts[size_t(k)] - tm);
        }
        const double alpha = -num / den;
        const double normalized = alpha / std::pow(4.0, j);
        INFO("shell ", j, " fitted exponent / 4^j = ", normalized);
        CHECK(normalized <= 1.0);
        c_min = std::min(c_min, normalized);
        c_max = std::max(c_max, normalized);
    }
    std::printf("heat decay: fitted exponent band [%.4f, %.4f] * 4^j\n", c_min, c_max);
    CHECK(c_min > 0.05);
}

TEST_CASE("product law: bilinear constant is bounded over random pairs") {
    Gridd g(128, 2 * kPi);
    auto part = build_partition(g);
    std::mt19937_64 rng(555);

    // (s1, s2, p1, p2) cases from the regularity range s_i <= 2/p_i
    const double cases[2][4] = {{1.0, 0.0, 2.0, 2.0}, {1.0, 1.0, 2.0, 2.0}};
    for (auto& cs : cases) {
        const double s1 = cs[0], s2 = cs[1], p1 = cs[2], p2 = cs[3];
        NormSpec<double> na(s1, p1, 1.0), nb(s2, p2, 1.0);
        NormSpec<double> nab(s1 + s2 - 2.0 / p1, p1, 1.0);
        double worst = 0;
        for (int trial = 0; trial < 100; ++trial) {
            auto a = random_scalar_field(g, rng, 0.25, true);
            auto b = random_scalar_field(g, rng, 0.25, true);
            const double denom = besov_norm(a, na, part) * besov_norm(b, nb, part);
            if (denom < 1e-14) continue;
            worst = std::max(worst, besov_norm(multiply(a, b), nab, part) / denom);
        }
        std::printf("product law (s1=%g s2=%g): max ratio %.4f\n", s1, s2, worst);
        // regression bound frozen from the calibrated first run (max 0.030)
        CHECK(worst < 0.12);
        CHECK(worst > 0.0);
    }
}

TEST_CASE("diffeomorphism action: ring filter of a composed field") {
    // Lemma-style bound || theta(mu^{-1} D)(u o psi) ||_{L2} <=
    //   C ||u||_{L2} min(mu/lambda ||grad phi||_inf, lambda/mu ||grad psi||_inf)
    // for psi a measure-preserving flow map of a stream field, phi = psi^{-1}.
    Gridd g(128, 2 * kPi);
    auto part = build_partition(g);
    std::mt19937_64 rng(99);

    // area-preserving map: short-time flow of a fixed stream function
    auto stream_velocity = [](double x, double y, double& vx, double& vy) {
        // u = grad^perp of 0.15 (sin x sin y + 0.4 cos 2x sin y)
        vx = -(0.15 * (std::sin(x) * std::cos(y) + 0.4 * std::cos(2 * x) * std::cos(y)));
        vy = 0.15 * (std::cos(x) * std::sin(y) - 0.8 * std::sin(2 * x) * std::sin(y));
    };
    auto flow_map = [&](double x, double y, double tau) {
        const int steps = 16;
        const double h = tau / steps;
        double px = x, py = y;
        for (int s = 0; s < steps; ++s) {
            double k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y;
            stream_velocity(px, py, k1x, k1y);
            stream_velocity(px + 0.5 * h * k1x, py + 0.5 * h * k1y, k2x, k2y);
            stream_velocity(px + 0.5 * h * k2x, py + 0.5 * h * k2y, k3x, k3y);
            stream_velocity(px + h * k3x, py + h * k3y, k4x, k4y);
            px += h / 6 * (k1x + 2 * k2x + 2 * k3x + k4x);
            py += h / 6 * (k1y + 2 * k2y + 2 * k3y + k4y);
        }
        return std::pair<double, double>{px, py};
    };

    const double tau = 0.5;
    // sup |grad psi| and |grad phi| by centered differences of the two flows
    auto grad_sup = [&](double direction) {
        const double eps = 1e-4;
        double worst = 0;
        for (int j = 0; j < g.n; j += 8) {
            for (int i = 0; i < g.n; i += 8) {
                const double x = g.coord(i), y = g.coord(j);
                auto xp = flow_map(x + eps, y, direction), xm = flow_map(x - eps, y, direction);
                auto yp = flow_map(x, y + eps, direction), ym = flow_map(x, y - eps, direction);
                const double j11 = (xp.first - xm.first) / (2 * eps);
                const double j21 = (xp.second - xm.second) / (2 * eps);
                const double j12 = (yp.first - ym.first) / (2 * eps);
                const double j22 = (yp.second - ym.second) / (2 * eps);
                worst = std::max(worst, std::sqrt(j11 * j11 + j12 * j12 + j21 * j21 + j22 * j22));
            }
        }
        return worst;
    };
    const double grad_psi = grad_sup(tau);
    const double grad_phi = grad_sup(-tau);

    const int j0 = 3;  // lambda = 2^{j0} mid-band
    REQUIRE(part.has_shell(j0));
    auto u = dyadic_block(random_scalar_field(g, rng), j0, part);
    const double u_l2 = l2_norm_spectral(u);
    auto up = to_physical(u);
    BicubicSampler<double> sample_u(up);

    // u o psi on the grid
    PhysicalFieldd comp(g, 1);
    for (int j = 0; j < g.n; ++j) {
        for (int i = 0; i < g.n; ++i) {
            auto pos = flow_map(g.coord(i), g.coord(j), tau);
            comp.comp(0)(i, j) = sample_u(0, pos.first, pos.second);
        }
    }
    auto composed = to_spectral(comp);

    const double lambda = std::pow(2.0, j0);
    double c_fit = 0;
    std::vector<double> ratios;
    for (int e = -3; e <= 3; ++e) {
        const double mu = lambda * std::pow(2.0, e);
        SpectralFieldd filtered = composed;
        for (int j = 0; j < g.n; ++j)
            for (int i = 0; i < g.n; ++i)
                filtered.comp(0)(i, j) *= dyadic_phi(part.xi_abs(i, j) / mu);
        const double lhs = l2_norm_spectral(filtered);
        const double bound =
            u_l2 * std::min(mu / lambda * grad_phi, lambda / mu * grad_psi);
        ratios.push_back(lhs / bound);
        c_fit = std::max(c_fit, lhs / bound);
    }
    std::printf("diffeomorphism action: fitted C = %.4f (grad psi %.3f, grad phi %.3f)\n", c_fit,
                grad_psi, grad_phi);
    CHECK(c_fit > 0.0);
    // frozen regression bound: one constant covers the whole 2^{-3}..2^3 sweep
    CHECK(c_fit < 2.0);
}
