#pragma once

#include "gphase/matrix.hpp"

// Arithmetic inner loops used by the rest of the library. Each kernel has a
// scalar reference implementation and, on x86-64 hosts, an AVX2/FMA variant;
// the active backend is chosen once at startup from CPU capabilities and can
// be forced (tests compare the variants against each other).

namespace gphase::kernels {

enum class Backend { scalar, avx2 };

const char* name(Backend b);
bool supported(Backend b);

/// Backend currently in use (auto-detected unless forced).
Backend active();

/// Pin a backend; throws std::invalid_argument if unsupported on this host.
void force(Backend b);

/// Drop any forced choice and re-detect.
void reset();

/// c = a * b for row-major n x n complex matrices. c must not alias a or b.
void matmul(const Complex* a, const Complex* b, Complex* c, int n);

/// tr(a * b) without forming the product. O(n^2).
Complex trace_product(const Complex* a, const Complex* b, int n);

namespace detail {
void matmul_scalar(const Complex* a, const Complex* b, Complex* c, int n);
Complex trace_product_scalar(const Complex* a, const Complex* b, int n);
#ifdef GPHASE_HAVE_AVX2
void matmul_avx2(const Complex* a, const Complex* b, Complex* c, int n);
Complex trace_product_avx2(const Complex* a, const Complex* b, int n);
#endif
}  // namespace detail

}  // namespace gphase::kernels
