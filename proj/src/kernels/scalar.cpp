#include "gphase/kernels.hpp"

// Reference kernels. These define the semantics the vector variants are
// equivalence-tested against: plain triple loop, accumulation in source order.

namespace gphase::kernels::detail {

void matmul_scalar(const Complex* a, const Complex* b, Complex* c, int n) {
    for (int i = 0; i < n; ++i) {
        Complex* crow = c + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) crow[j] = Complex{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
            const Complex aik = a[static_cast<std::size_t>(i) * n + k];
            const Complex* brow = b + static_cast<std::size_t>(k) * n;
            for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
        }
    }
}

Complex trace_product_scalar(const Complex* a, const Complex* b, int n) {
    Complex acc{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const Complex* arow = a + static_cast<std::size_t>(i) * n;
        for (int k = 0; k < n; ++k) acc += arow[k] * b[static_cast<std::size_t>(k) * n + i];
    }
    return acc;
}

}  // namespace gphase::kernels::detail
