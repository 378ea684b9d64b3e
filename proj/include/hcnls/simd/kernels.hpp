#pragma once

// Runtime-dispatched arithmetic kernels for the quadrature reductions and the
// dense Riesz-kernel matvec. Every kernel has a scalar reference implementation
// and, where the host supports it, an AVX2+FMA (x86-64) or NEON (aarch64)
// variant. The backend is chosen once at startup; HCNLS_FORCE_SCALAR=1 in the
// environment (or force_scalar(true) before first use) pins the scalar path.
//
// Determinism: each backend uses a fixed accumulation order, so results are
// bit-reproducible for a given backend. Scalar and SIMD backends differ only
// by floating-point reduction order (equivalence-tested in test_simd.cpp).

#include <complex>
#include <cstddef>

namespace hcnls::simd {

// Name of the dispatched backend: "scalar", "avx2" or "neon".
const char* active_backend();

// Pin the scalar reference path. Must be called before the first kernel use
// to take effect; later calls re-dispatch immediately (test hook).
void force_scalar(bool on);

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, std::size_t n);

// sum_i w[i]*a[i]*b[i]
double weighted_dot(const double* w, const double* a, const double* b, std::size_t n);

// sum_i w[i]*|v[i]|^2
double weighted_norm_sq(const double* w, const std::complex<double>* v, std::size_t n);

// y = K x with K row-major (rows x cols)
void matvec(const double* k, std::size_t rows, std::size_t cols, const double* x, double* y);

} // namespace hcnls::simd
