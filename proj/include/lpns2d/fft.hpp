#pragma once

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

namespace lpns2d {

template <typename Scalar>
using ComplexArray = Eigen::Array<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealArray = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

// Per-thread cache of 1-D FFT plans and scratch, keyed by transform length.
// All kernels are single-lane and deterministic; the thread_local cache only
// exists so that independent solver instances on different threads do not
// share mutable plan state.
template <typename Scalar>
struct FftWorkspace {
    Eigen::FFT<Scalar> fft;
    std::vector<std::complex<Scalar>> row_in, row_out;

    static FftWorkspace& of_size(int n) {
        thread_local std::map<int, FftWorkspace> cache;
        auto& ws = cache[n];
        ws.row_in.resize(static_cast<size_t>(n));
        ws.row_out.resize(static_cast<size_t>(n));
        return ws;
    }
};

}  // namespace detail

// In-place 2-D DFT, unnormalized forward convention:
//   a_hat(m) = sum_x a(x) exp(-i 2 pi m . x / L).
template <typename Scalar>
void fft2_forward(ComplexArray<Scalar>& a) {
    const int n = static_cast<int>(a.rows());
    auto& ws = detail::FftWorkspace<Scalar>::of_size(n);
    for (int c = 0; c < n; ++c) {
        ws.fft.fwd(ws.row_out.data(), a.col(c).data(), n);
        for (int i = 0; i < n; ++i) a(i, c) = ws.row_out[i];
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) ws.row_in[static_cast<size_t>(c)] = a(r, c);
        ws.fft.fwd(ws.row_out.data(), ws.row_in.data(), n);
        for (int c = 0; c < n; ++c) a(r, c) = ws.row_out[static_cast<size_t>(c)];
    }
}

// In-place 2-D inverse DFT with the matching 1/n^2 normalization, so that
// fft2_inverse(fft2_forward(a)) == a.
template <typename Scalar>
void fft2_inverse(ComplexArray<Scalar>& a) {
    const int n = static_cast<int>(a.rows());
    auto& ws = detail::FftWorkspace<Scalar>::of_size(n);
    for (int c = 0; c < n; ++c) {
        ws.fft.inv(ws.row_out.data(), a.col(c).data(), n);
        for (int i = 0; i < n; ++i) a(i, c) = ws.row_out[i];
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) ws.row_in[static_cast<size_t>(c)] = a(r, c);
        ws.fft.inv(ws.row_out.data(), ws.row_in.data(), n);
        for (int c = 0; c < n; ++c) a(r, c) = ws.row_out[static_cast<size_t>(c)];
    }
}

}  // namespace lpns2d
