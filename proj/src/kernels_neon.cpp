// NEON variants of the dense kernels. float64x2 is baseline on aarch64,
// so supported() is unconditional there.

#include <arm_neon.h>

#include <cassert>

#include "hierrec/kernels.hpp"

namespace hierrec::kernels::neon {

bool supported() {
#if defined(__aarch64__)
    return true;
#else
    return false;
#endif
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    const std::size_t n = a.size();
    std::size_t i = 0;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
        acc = vfmaq_f64(acc, vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
    }
    double sum = vaddvq_f64(acc);
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

double squared_l2(std::span<const double> a) {
    const std::size_t n = a.size();
    std::size_t i = 0;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vld1q_f64(a.data() + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double sum = vaddvq_f64(acc);
    for (; i < n; ++i) sum += a[i] * a[i];
    return sum;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    const std::size_t n = a.size();
    std::size_t i = 0;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vsubq_f64(vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
        acc = vfmaq_f64(acc, d, d);
    }
    double sum = vaddvq_f64(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    const std::size_t n = x.size();
    std::size_t i = 0;
    const float64x2_t va = vdupq_n_f64(alpha);
    for (; i + 2 <= n; i += 2) {
        float64x2_t vy = vld1q_f64(y.data() + i);
        vst1q_f64(y.data() + i, vfmaq_f64(vy, va, vld1q_f64(x.data() + i)));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(std::span<double> x, double alpha) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    const float64x2_t va = vdupq_n_f64(alpha);
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(x.data() + i, vmulq_f64(vld1q_f64(x.data() + i), va));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

}  // namespace hierrec::kernels::neon
