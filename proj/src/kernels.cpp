#include "hierrec/kernels.hpp"

#include <atomic>
#include <cassert>

namespace hierrec::kernels {

namespace scalar {

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double squared_l2(std::span<const double> a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return acc;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(std::span<double> x, double alpha) {
    for (double& v : x) v *= alpha;
}

}  // namespace scalar

namespace {

struct Vtable {
    double (*dot)(std::span<const double>, std::span<const double>);
    double (*squared_l2)(std::span<const double>);
    double (*squared_distance)(std::span<const double>, std::span<const double>);
    void (*axpy)(double, std::span<const double>, std::span<double>);
    void (*scale)(std::span<double>, double);
};

constexpr Vtable kScalarVtable{scalar::dot, scalar::squared_l2, scalar::squared_distance,
                               scalar::axpy, scalar::scale};

#if HIERREC_HAVE_AVX2
constexpr Vtable kAvx2Vtable{avx2::dot, avx2::squared_l2, avx2::squared_distance,
                             avx2::axpy, avx2::scale};
#endif
#if HIERREC_HAVE_NEON
constexpr Vtable kNeonVtable{neon::dot, neon::squared_l2, neon::squared_distance,
                             neon::axpy, neon::scale};
#endif

std::atomic<const Vtable*> g_vtable{nullptr};
std::atomic<Backend> g_backend{Backend::Scalar};

const Vtable* vtable_for(Backend b) {
    switch (b) {
#if HIERREC_HAVE_AVX2
        case Backend::Avx2:
            return &kAvx2Vtable;
#endif
#if HIERREC_HAVE_NEON
        case Backend::Neon:
            return &kNeonVtable;
#endif
        default:
            return &kScalarVtable;
    }
}

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return true;
#if HIERREC_HAVE_AVX2
        case Backend::Avx2:
            return avx2::supported();
#endif
#if HIERREC_HAVE_NEON
        case Backend::Neon:
            return neon::supported();
#endif
        default:
            return false;
    }
}

const Vtable* active_vtable() {
    const Vtable* vt = g_vtable.load(std::memory_order_acquire);
    if (vt == nullptr) {
        detect_backend();
        vt = g_vtable.load(std::memory_order_acquire);
    }
    return vt;
}

}  // namespace

Backend detect_backend() {
    Backend best = Backend::Scalar;
#if HIERREC_HAVE_AVX2
    if (avx2::supported()) best = Backend::Avx2;
#endif
#if HIERREC_HAVE_NEON
    if (neon::supported()) best = Backend::Neon;
#endif
    g_backend.store(best, std::memory_order_release);
    g_vtable.store(vtable_for(best), std::memory_order_release);
    return best;
}

Backend active_backend() {
    active_vtable();
    return g_backend.load(std::memory_order_acquire);
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Avx2:
            return "avx2";
        case Backend::Neon:
            return "neon";
        default:
            return "scalar";
    }
}

bool set_backend(Backend b) {
    if (!backend_supported(b)) return false;
    g_backend.store(b, std::memory_order_release);
    g_vtable.store(vtable_for(b), std::memory_order_release);
    return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
    return active_vtable()->dot(a, b);
}

double squared_l2(std::span<const double> a) {
    return active_vtable()->squared_l2(a);
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    return active_vtable()->squared_distance(a, b);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active_vtable()->axpy(alpha, x, y);
}

void scale(std::span<double> x, double alpha) {
    active_vtable()->scale(x, alpha);
}

}  // namespace hierrec::kernels
