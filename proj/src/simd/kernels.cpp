#include "hcnls/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace hcnls::simd {

// ---------------------------------------------------------------------------
// Scalar reference kernels.
//
// Reductions run with four interleaved accumulators (fixed order) so the
// scalar path is both reasonably fast and bit-deterministic.
// ---------------------------------------------------------------------------

namespace detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += a[i] * b[i];
    return ((s0 + s1) + (s2 + s3)) + tail;
}

double weighted_dot_scalar(const double* w, const double* a, const double* b, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += w[i] * a[i] * b[i];
        s1 += w[i + 1] * a[i + 1] * b[i + 1];
        s2 += w[i + 2] * a[i + 2] * b[i + 2];
        s3 += w[i + 3] * a[i + 3] * b[i + 3];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += w[i] * a[i] * b[i];
    return ((s0 + s1) + (s2 + s3)) + tail;
}

double weighted_norm_sq_scalar(const double* w, const std::complex<double>* v, std::size_t n) {
    // std::complex<double> is layout-compatible with double[2]
    const double* x = reinterpret_cast<const double*>(v);
    double s0 = 0.0, s1 = 0.0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        s0 += w[i] * (x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
        s1 += w[i + 1] * (x[2 * i + 2] * x[2 * i + 2] + x[2 * i + 3] * x[2 * i + 3]);
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += w[i] * (x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
    return (s0 + s1) + tail;
}

void matvec_scalar(const double* k, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) {
        y[r] = dot_scalar(k + r * cols, x, cols);
    }
}

#if defined(__x86_64__) || defined(_M_X64)
double dot_avx2(const double* a, const double* b, std::size_t n);
double weighted_dot_avx2(const double* w, const double* a, const double* b, std::size_t n);
double weighted_norm_sq_avx2(const double* w, const std::complex<double>* v, std::size_t n);
void matvec_avx2(const double* k, std::size_t rows, std::size_t cols, const double* x, double* y);
#endif
#if defined(__ARM_NEON) || defined(__aarch64__)
double dot_neon(const double* a, const double* b, std::size_t n);
double weighted_dot_neon(const double* w, const double* a, const double* b, std::size_t n);
double weighted_norm_sq_neon(const double* w, const std::complex<double>* v, std::size_t n);
void matvec_neon(const double* k, std::size_t rows, std::size_t cols, const double* x, double* y);
#endif

} // namespace detail

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

namespace {

struct Backend {
    const char* name;
    double (*dot)(const double*, const double*, std::size_t);
    double (*weighted_dot)(const double*, const double*, const double*, std::size_t);
    double (*weighted_norm_sq)(const double*, const std::complex<double>*, std::size_t);
    void (*matvec)(const double*, std::size_t, std::size_t, const double*, double*);
};

constexpr Backend scalar_backend{
    "scalar",
    detail::dot_scalar,
    detail::weighted_dot_scalar,
    detail::weighted_norm_sq_scalar,
    detail::matvec_scalar,
};

std::atomic<bool> g_force_scalar{false};

Backend pick_backend() {
    if (g_force_scalar.load()) return scalar_backend;
    if (const char* env = std::getenv("HCNLS_FORCE_SCALAR"); env && env[0] == '1') {
        return scalar_backend;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
        return Backend{"avx2", detail::dot_avx2, detail::weighted_dot_avx2,
                       detail::weighted_norm_sq_avx2, detail::matvec_avx2};
    }
#elif defined(__ARM_NEON) || defined(__aarch64__)
    return Backend{"neon", detail::dot_neon, detail::weighted_dot_neon,
                   detail::weighted_norm_sq_neon, detail::matvec_neon};
#endif
    return scalar_backend;
}

Backend& backend() {
    static Backend b = pick_backend();
    return b;
}

} // namespace

const char* active_backend() { return backend().name; }

void force_scalar(bool on) {
    g_force_scalar.store(on);
    backend() = pick_backend();
}

double dot(const double* a, const double* b, std::size_t n) {
    return backend().dot(a, b, n);
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
    return backend().weighted_dot(w, a, b, n);
}

double weighted_norm_sq(const double* w, const std::complex<double>* v, std::size_t n) {
    return backend().weighted_norm_sq(w, v, n);
}

void matvec(const double* k, std::size_t rows, std::size_t cols, const double* x, double* y) {
    backend().matvec(k, rows, cols, x, y);
}

} // namespace hcnls::simd
