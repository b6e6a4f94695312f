#pragma once

#include <vector>

#include "lpns2d/littlewood_paley.hpp"

namespace lpns2d {

// Time-indexed record of per-shell L^p norms: table(k, idx) holds
// ||Delta_{j_min+idx} u(t_k)||_{L^p}. Built by appending one row per solver
// step; the norm series must cover every step, never a subsample, so that
// threshold crossings are single-sample accurate.
template <typename Scalar>
struct NormSeries {
    NormSpec<Scalar> spec;
    int j_min = 0;
    std::vector<Scalar> times;
    std::vector<std::vector<Scalar>> table;

    int shells() const { return table.empty() ? 0 : static_cast<int>(table.front().size()); }

    void append(Scalar t, std::vector<Scalar> shell_norms) {
        if (!times.empty()) {
            if (!(t > times.back()))
                throw DomainError("norm series: times must be strictly increasing");
            if (shell_norms.size() != table.front().size())
                throw DimensionError("norm series: shell count changed mid-series");
        }
        times.push_back(t);
        table.push_back(std::move(shell_norms));
    }

    void append_field(Scalar t, const SpectralField<Scalar>& u,
                      const DyadicPartition<Scalar>& part) {
        j_min = part.j_min;
        append(t, shell_lp_norms(u, part, spec.p));
    }

    // Instantaneous Besov norm at sample k.
    Scalar besov_at(size_t k) const {
        return aggregate_shells(table[k], j_min, spec.s, spec.r);
    }
};

namespace detail {

// Trapezoid integral of sampled values against the stored times.
template <typename Scalar>
Scalar trapezoid(const std::vector<Scalar>& t, const std::vector<Scalar>& v) {
    Scalar acc = 0;
    for (size_t k = 1; k < t.size(); ++k)
        acc += Scalar(0.5) * (t[k] - t[k - 1]) * (v[k] + v[k - 1]);
    return acc;
}

}  // namespace detail

// Chemin-Lerner norm: per shell, an L^lambda quadrature in time of the shell
// norm; then the l^r sum of 2^{js} weights across shells.
template <typename Scalar>
Scalar chemin_lerner_norm(const NormSeries<Scalar>& series, Scalar lambda) {
    if (series.times.empty()) throw DomainError("chemin-lerner norm: empty series");
    const int m = series.shells();
    std::vector<Scalar> per_shell(static_cast<size_t>(m), Scalar(0));
    const bool sup_in_time = std::isinf(static_cast<double>(lambda));
    for (int idx = 0; idx < m; ++idx) {
        if (sup_in_time) {
            Scalar s = 0;
            for (const auto& row : series.table) s = std::max(s, row[static_cast<size_t>(idx)]);
            per_shell[static_cast<size_t>(idx)] = s;
        } else {
            std::vector<Scalar> powed(series.times.size());
            for (size_t k = 0; k < series.times.size(); ++k)
                powed[k] = std::pow(series.table[k][static_cast<size_t>(idx)], lambda);
            per_shell[static_cast<size_t>(idx)] =
                std::pow(detail::trapezoid(series.times, powed), Scalar(1) / lambda);
        }
    }
    return aggregate_shells(per_shell, series.j_min, series.spec.s, series.spec.r);
}

// Weighted time norm  int_0^T f(t) ||u(t)||_X dt  for nonnegative weight f
// sampled at the series times (X the Besov space of the series, r = 1).
template <typename Scalar>
Scalar weighted_time_norm(const NormSeries<Scalar>& series,
                          const std::vector<Scalar>& weight_samples) {
    if (series.times.empty()) throw DomainError("weighted time norm: empty series");
    if (weight_samples.size() != series.times.size())
        throw AlignmentError("weighted time norm: weight samples misaligned with series times");
    if (series.spec.r != Scalar(1))
        throw DomainError("weighted time norm: defined for r = 1 series");
    std::vector<Scalar> integrand(series.times.size());
    for (size_t k = 0; k < series.times.size(); ++k) {
        if (weight_samples[k] < Scalar(0))
            throw DomainError("weighted time norm: negative weight sample");
        integrand[k] = weight_samples[k] * series.besov_at(k);
    }
    return detail::trapezoid(series.times, integrand);
}

// Scales each time slice by exp(-lambda * W(t_k)) where W is the sampled
// cumulative integral of the weight. Mirrors the analysis device
// a_lambda = a exp(-lambda int_0^t f); the dynamics stay unweighted.
template <typename Scalar>
NormSeries<Scalar> apply_exponential_weight(const NormSeries<Scalar>& series,
                                            const std::vector<Scalar>& weight_integral,
                                            Scalar lambda) {
    if (weight_integral.size() != series.times.size())
        throw AlignmentError("exponential weight: integral samples misaligned with series");
    NormSeries<Scalar> out = series;
    for (size_t k = 0; k < out.table.size(); ++k) {
        const Scalar factor = std::exp(-lambda * weight_integral[k]);
        for (auto& v : out.table[k]) v *= factor;
    }
    return out;
}

// Cumulative trapezoid of samples; result[k] = int_{t_0}^{t_k}.
template <typename Scalar>
std::vector<Scalar> cumulative_integral(const std::vector<Scalar>& t,
                                        const std::vector<Scalar>& v) {
    std::vector<Scalar> out(t.size(), Scalar(0));
    for (size_t k = 1; k < t.size(); ++k)
        out[k] = out[k - 1] + Scalar(0.5) * (t[k] - t[k - 1]) * (v[k] + v[k - 1]);
    return out;
}

}  // namespace lpns2d
