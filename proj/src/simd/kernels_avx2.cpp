// AVX2+FMA variants. Compiled with per-function target attributes so the TU
// builds without -mavx2; the dispatcher only selects these after a cpuid check.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <complex>
#include <cstddef>

namespace hcnls::simd::detail {

#define HCNLS_AVX2 __attribute__((target("avx2,fma")))

namespace {

// Fixed-order horizontal sum: ((l0+l2)+(l1+l3))
HCNLS_AVX2 inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);          // {l0+l2, l1+l3}
    return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

} // namespace

HCNLS_AVX2
double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    double s = hsum(acc0) + hsum(acc1);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

HCNLS_AVX2
double weighted_dot_avx2(const double* w, const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ab = _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), ab, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * a[i] * b[i];
    return s;
}

HCNLS_AVX2
double weighted_norm_sq_avx2(const double* w, const std::complex<double>* v, std::size_t n) {
    const double* x = reinterpret_cast<const double*>(v);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v01 = _mm256_loadu_pd(x + 2 * i);      // re0 im0 re1 im1
        __m256d v23 = _mm256_loadu_pd(x + 2 * i + 4);  // re2 im2 re3 im3
        __m256d sq01 = _mm256_mul_pd(v01, v01);
        __m256d sq23 = _mm256_mul_pd(v23, v23);
        // |v0|^2 |v1|^2 |v2|^2 |v3|^2
        __m256d re = _mm256_unpacklo_pd(sq01, sq23);   // re0 re2 re1 re3
        __m256d im = _mm256_unpackhi_pd(sq01, sq23);   // im0 im2 im1 im3
        __m256d mag = _mm256_add_pd(re, im);           // |v|^2 in order 0 2 1 3
        __m256d wv = _mm256_loadu_pd(w + i);           // w0 w1 w2 w3
        __m256d wp = _mm256_permute4x64_pd(wv, 0b11011000); // w0 w2 w1 w3
        acc = _mm256_fmadd_pd(wp, mag, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        s += w[i] * (x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
    }
    return s;
}

HCNLS_AVX2
void matvec_avx2(const double* k, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) {
        y[r] = dot_avx2(k + r * cols, x, cols);
    }
}

} // namespace hcnls::simd::detail

#endif // x86-64
