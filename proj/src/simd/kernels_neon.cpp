// NEON variants (aarch64). Mirrors the AVX2 kernels with 2-wide float64x2_t
// lanes and a fixed accumulation order.

#if defined(__ARM_NEON) || defined(__aarch64__)

#include <arm_neon.h>

#include <complex>
#include <cstddef>

namespace hcnls::simd::detail {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double s = (vgetq_lane_f64(acc0, 0) + vgetq_lane_f64(acc0, 1)) +
               (vgetq_lane_f64(acc1, 0) + vgetq_lane_f64(acc1, 1));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double weighted_dot_neon(const double* w, const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t ab = vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc = vfmaq_f64(acc, vld1q_f64(w + i), ab);
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += w[i] * a[i] * b[i];
    return s;
}

double weighted_norm_sq_neon(const double* w, const std::complex<double>* v, std::size_t n) {
    const double* x = reinterpret_cast<const double*>(v);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v0 = vld1q_f64(x + 2 * i);      // re0 im0
        float64x2_t v1 = vld1q_f64(x + 2 * i + 2);  // re1 im1
        float64x2_t sq0 = vmulq_f64(v0, v0);
        float64x2_t sq1 = vmulq_f64(v1, v1);
        float64x2_t mag = vpaddq_f64(sq0, sq1);     // |v0|^2 |v1|^2
        acc = vfmaq_f64(acc, vld1q_f64(w + i), mag);
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) {
        s += w[i] * (x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
    }
    return s;
}

void matvec_neon(const double* k, std::size_t rows, std::size_t cols, const double* x, double* y) {
    for (std::size_t r = 0; r < rows; ++r) {
        y[r] = dot_neon(k + r * cols, x, cols);
    }
}

} // namespace hcnls::simd::detail

#endif // NEON
