#include "gphase/kernels.hpp"

#include <atomic>
#include <stdexcept>

namespace gphase::kernels {

namespace {

struct KernelTable {
    void (*matmul)(const Complex*, const Complex*, Complex*, int);
    Complex (*trace_product)(const Complex*, const Complex*, int);
    Backend backend;
};

constexpr KernelTable kScalarTable{detail::matmul_scalar, detail::trace_product_scalar,
                                   Backend::scalar};
#ifdef GPHASE_HAVE_AVX2
constexpr KernelTable kAvx2Table{detail::matmul_avx2, detail::trace_product_avx2, Backend::avx2};
#endif

bool host_has_avx2() {
#if defined(GPHASE_HAVE_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* detect() {
#ifdef GPHASE_HAVE_AVX2
    if (host_has_avx2()) return &kAvx2Table;
#endif
    return &kScalarTable;
}

std::atomic<const KernelTable*> g_table{nullptr};

const KernelTable* table() {
    const KernelTable* t = g_table.load(std::memory_order_acquire);
    if (t == nullptr) {
        t = detect();
        g_table.store(t, std::memory_order_release);
    }
    return t;
}

}  // namespace

const char* name(Backend b) { return b == Backend::scalar ? "scalar" : "avx2"; }

bool supported(Backend b) { return b == Backend::scalar || (b == Backend::avx2 && host_has_avx2()); }

Backend active() { return table()->backend; }

void force(Backend b) {
    if (!supported(b))
        throw std::invalid_argument(std::string("kernel backend not supported on this host: ") +
                                    name(b));
    switch (b) {
        case Backend::scalar:
            g_table.store(&kScalarTable, std::memory_order_release);
            break;
        case Backend::avx2:
#ifdef GPHASE_HAVE_AVX2
            g_table.store(&kAvx2Table, std::memory_order_release);
#endif
            break;
    }
}

void reset() { g_table.store(detect(), std::memory_order_release); }

void matmul(const Complex* a, const Complex* b, Complex* c, int n) {
    table()->matmul(a, b, c, n);
}

Complex trace_product(const Complex* a, const Complex* b, int n) {
    return table()->trace_product(a, b, n);
}

}  // namespace gphase::kernels
