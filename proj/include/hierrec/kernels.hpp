#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace hierrec::kernels {

// Dense double-precision primitives behind the model's inner loops
// (logit accumulation, gradient updates, prior distances). Each has a
// scalar reference implementation and, where the target supports it, a
// SIMD variant selected once at startup. A variant may differ from the
// reference by reassociation rounding only; within one process the active
// backend is fixed, so repeated runs are byte-identical.

enum class Backend { Scalar, Avx2, Neon };

Backend active_backend();
const char* backend_name(Backend b);

// Returns false (and leaves the dispatch untouched) if the backend is not
// available on this machine. Scalar always succeeds.
bool set_backend(Backend b);

// Picks the best supported backend. Called lazily by the dispatched
// entry points; call explicitly to force re-detection after set_backend.
Backend detect_backend();

// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

// sum_i a[i]^2
double squared_l2(std::span<const double> a);

// sum_i (a[i] - b[i])^2
double squared_distance(std::span<const double> a, std::span<const double> b);

// y[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> y);

// x[i] *= alpha
void scale(std::span<double> x, double alpha);

// Reference implementations, always scalar; used by the equivalence tests
// and as the dispatch fallback.
namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
double squared_l2(std::span<const double> a);
double squared_distance(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(std::span<double> x, double alpha);
}  // namespace scalar

#if HIERREC_HAVE_AVX2
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
double squared_l2(std::span<const double> a);
double squared_distance(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(std::span<double> x, double alpha);
bool supported();
}  // namespace avx2
#endif

#if HIERREC_HAVE_NEON
namespace neon {
double dot(std::span<const double> a, std::span<const double> b);
double squared_l2(std::span<const double> a);
double squared_distance(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(std::span<double> x, double alpha);
bool supported();
}  // namespace neon
#endif

}  // namespace hierrec::kernels
