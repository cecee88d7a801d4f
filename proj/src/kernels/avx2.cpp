#include "gphase/kernels.hpp"

#ifdef GPHASE_HAVE_AVX2

#include <immintrin.h>

// AVX2 variants: one __m256d holds two complex doubles (re0 im0 re1 im1).
// Complex multiply-accumulate uses the permute + addsub identity:
//   (ar + i ai)(br + i bi) = (ar*br - ai*bi) + i(ar*bi + ai*br)
// where the first term pair comes from mul(ar, b) and the second from
// mul(ai, swap(b)), combined lanewise by addsub.

namespace gphase::kernels::detail {

namespace {

inline __m256d cmul_acc(__m256d acc, double ar, double ai, __m256d b) {
    const __m256d var = _mm256_set1_pd(ar);
    const __m256d vai = _mm256_set1_pd(ai);
    const __m256d t1 = _mm256_mul_pd(var, b);
    const __m256d t2 = _mm256_mul_pd(vai, _mm256_permute_pd(b, 0b0101));
    return _mm256_add_pd(acc, _mm256_addsub_pd(t1, t2));
}

}  // namespace

void matmul_avx2(const Complex* a, const Complex* b, Complex* c, int n) {
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    const int jv = n & ~1;  // columns handled two complexes at a time

    for (int i = 0; i < n; ++i) {
        const Complex* arow = a + static_cast<std::size_t>(i) * n;
        double* crow = cd + static_cast<std::size_t>(i) * n * 2;

        for (int j = 0; j < jv; j += 2) {
            __m256d acc = _mm256_setzero_pd();
            for (int k = 0; k < n; ++k) {
                const __m256d vb = _mm256_loadu_pd(bd + (static_cast<std::size_t>(k) * n + j) * 2);
                acc = cmul_acc(acc, arow[k].real(), arow[k].imag(), vb);
            }
            _mm256_storeu_pd(crow + 2 * j, acc);
        }
        if (jv < n) {  // odd trailing column
            Complex acc{0.0, 0.0};
            for (int k = 0; k < n; ++k) acc += arow[k] * b[static_cast<std::size_t>(k) * n + jv];
            c[static_cast<std::size_t>(i) * n + jv] = acc;
        }
    }
}

Complex trace_product_avx2(const Complex* a, const Complex* b, int n) {
    const double* bd = reinterpret_cast<const double*>(b);
    __m256d acc = _mm256_setzero_pd();
    Complex tail{0.0, 0.0};
    const int kv = n & ~1;

    for (int i = 0; i < n; ++i) {
        const Complex* arow = a + static_cast<std::size_t>(i) * n;
        const double* ad = reinterpret_cast<const double*>(arow);
        for (int k = 0; k < kv; k += 2) {
            // two contiguous entries of row i of a, two strided entries of column i of b
            const __m256d va = _mm256_loadu_pd(ad + 2 * k);
            const __m256d vb = _mm256_loadu2_m128d(bd + (static_cast<std::size_t>(k + 1) * n + i) * 2,
                                                   bd + (static_cast<std::size_t>(k) * n + i) * 2);
            const __m256d t1 = _mm256_mul_pd(_mm256_unpacklo_pd(va, va), vb);
            const __m256d t2 =
                _mm256_mul_pd(_mm256_unpackhi_pd(va, va), _mm256_permute_pd(vb, 0b0101));
            acc = _mm256_add_pd(acc, _mm256_addsub_pd(t1, t2));
        }
        if (kv < n) tail += arow[kv] * b[static_cast<std::size_t>(kv) * n + i];
    }

    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    return Complex{lanes[0] + lanes[2], lanes[1] + lanes[3]} + tail;
}

}  // namespace gphase::kernels::detail

#endif  // GPHASE_HAVE_AVX2
