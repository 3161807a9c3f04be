// AVX2 + FMA variants of the dense kernels. This translation unit is the
// only one compiled with -mavx2 -mfma; entry is gated by a cpuid check so
// the dispatcher never routes here on unsupported hardware.

#include <immintrin.h>

#include <cassert>

#include "hierrec/kernels.hpp"

namespace hierrec::kernels::avx2 {

namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

}  // namespace

bool supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    const std::size_t n = a.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a.data() + i);
        __m256d vb = _mm256_loadu_pd(b.data() + i);
        acc = _mm256_fmadd_pd(va, vb, acc);
    }
    double sum = hsum(acc);
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

double squared_l2(std::span<const double> a) {
    const std::size_t n = a.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(a.data() + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double sum = hsum(acc);
    for (; i < n; ++i) sum += a[i] * a[i];
    return sum;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    const std::size_t n = a.size();
    std::size_t i = 0;
    __m256d acc = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        __m256d va = _mm256_loadu_pd(a.data() + i);
        __m256d vb = _mm256_loadu_pd(b.data() + i);
        __m256d d = _mm256_sub_pd(va, vb);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double sum = hsum(acc);
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
    const __m256d va = _mm256_set1_pd(alpha);
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x.data() + i);
        __m256d vy = _mm256_loadu_pd(y.data() + i);
        _mm256_storeu_pd(y.data() + i, _mm256_fmadd_pd(va, vx, vy));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(std::span<double> x, double alpha) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    const __m256d va = _mm256_set1_pd(alpha);
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x.data() + i);
        _mm256_storeu_pd(x.data() + i, _mm256_mul_pd(v, va));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

}  // namespace hierrec::kernels::avx2
