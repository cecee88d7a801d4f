#include "gphase/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "gphase/kernels.hpp"

namespace gphase {

namespace {

void require_finite(const ComplexMatrix& a, const char* op) {
    if (!a.all_finite()) throw std::invalid_argument(std::string(op) + ": non-finite entry");
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

}  // namespace

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "mat_mul");
    require_finite(a, "mat_mul");
    require_finite(b, "mat_mul");
    ComplexMatrix c(a.dim());
    kernels::matmul(a.data(), b.data(), c.data(), a.dim());
    return c;
}

Complex trace(const ComplexMatrix& a) {
    require_finite(a, "trace");
    Complex t{0.0, 0.0};
    for (int i = 0; i < a.dim(); ++i) t += a.at(i, i);
    return t;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    require_finite(a, "adjoint");
    ComplexMatrix r(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) r.at(i, j) = std::conj(a.at(j, i));
    return r;
}

double hermitian_defect(const ComplexMatrix& a) {
    double d = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            d = std::max(d, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
    return d;
}

double unitary_defect(const ComplexMatrix& a) {
    const int n = a.dim();
    double d = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Complex s{0.0, 0.0};
            for (int k = 0; k < n; ++k) s += a.at(i, k) * std::conj(a.at(j, k));
            if (i == j) s -= 1.0;
            d = std::max(d, std::abs(s));
        }
    }
    return d;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    return a.all_finite() && hermitian_defect(a) < tol;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
    return a.all_finite() && unitary_defect(a) < tol;
}

namespace detail {

// Cyclic Jacobi for complex Hermitian matrices. Each (p, q) rotation is the
// unitary G = [[c, -s e^{i phi}], [s e^{-i phi}, c]] acting in the (p, q)
// plane, with phi = arg a_pq and the classic stable tangent choice
// t = sign(tau) / (|tau| + sqrt(1 + tau^2)), tau = (a_pp - a_qq) / (2 |a_pq|).
void jacobi_hermitian(Complex* a, Complex* v, double* w, int n) {
    const std::size_t nn = static_cast<std::size_t>(n);

    // v = I
    for (std::size_t i = 0; i < nn * nn; ++i) v[i] = Complex{0.0, 0.0};
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

    if (n == 1) {
        w[0] = a[0].real();
        return;
    }

    double scale = 0;
    for (std::size_t i = 0; i < nn * nn; ++i) scale = std::max(scale, std::abs(a[i]));
    if (scale == 0) scale = 1;
    const double stop = 1e-15 * scale;

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q)
                off = std::max(off, std::abs(a[static_cast<std::size_t>(p) * n + q]));
        if (off <= stop) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a[static_cast<std::size_t>(p) * n + q];
                const double r = std::abs(apq);
                if (r <= stop * 1e-2) continue;

                const Complex phase = apq / r;  // e^{i phi}
                const double app = a[static_cast<std::size_t>(p) * n + p].real();
                const double aqq = a[static_cast<std::size_t>(q) * n + q].real();
                const double tau = (app - aqq) / (2.0 * r);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex wl = s * std::conj(phase);  // G(q,p)
                const Complex wc = std::conj(wl);         // s e^{i phi}

                // rows p, q :  A <- G^t* A
                for (int j = 0; j < n; ++j) {
                    const Complex rp = a[static_cast<std::size_t>(p) * n + j];
                    const Complex rq = a[static_cast<std::size_t>(q) * n + j];
                    a[static_cast<std::size_t>(p) * n + j] = c * rp + wc * rq;
                    a[static_cast<std::size_t>(q) * n + j] = -wl * rp + c * rq;
                }
                // columns p, q :  A <- A G
                for (int i = 0; i < n; ++i) {
                    const Complex cp = a[static_cast<std::size_t>(i) * n + p];
                    const Complex cq = a[static_cast<std::size_t>(i) * n + q];
                    a[static_cast<std::size_t>(i) * n + p] = c * cp + wl * cq;
                    a[static_cast<std::size_t>(i) * n + q] = -wc * cp + c * cq;
                }
                a[static_cast<std::size_t>(p) * n + q] = Complex{0.0, 0.0};
                a[static_cast<std::size_t>(q) * n + p] = Complex{0.0, 0.0};

                // eigenvector accumulation V <- V G
                for (int i = 0; i < n; ++i) {
                    const Complex vp = v[static_cast<std::size_t>(i) * n + p];
                    const Complex vq = v[static_cast<std::size_t>(i) * n + q];
                    v[static_cast<std::size_t>(i) * n + p] = c * vp + wl * vq;
                    v[static_cast<std::size_t>(i) * n + q] = -wc * vp + c * vq;
                }
            }
        }
    }

    for (int i = 0; i < n; ++i) w[i] = a[static_cast<std::size_t>(i) * n + i].real();
}

}  // namespace detail

EigenSystem hermitian_eigensystem(const ComplexMatrix& h, double herm_tol) {
    require_finite(h, "hermitian_eigensystem");
    if (hermitian_defect(h) >= herm_tol)
        throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian");

    const int n = h.dim();
    // Symmetrize before iterating so roundoff in the input cannot drift.
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a.at(i, j) = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n);
    detail::jacobi_hermitian(a.data(), es.vectors.data(), es.values.data(), n);

    // sort descending, permuting eigenvector columns to match
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return es.values[i] > es.values[j]; });

    EigenSystem sorted;
    sorted.values.resize(n);
    sorted.vectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        sorted.values[k] = es.values[order[k]];
        for (int i = 0; i < n; ++i) sorted.vectors.at(i, k) = es.vectors.at(i, order[k]);
    }
    return sorted;
}

ComplexMatrix expm_anti_hermitian(const ComplexMatrix& h, double theta, double herm_tol) {
    if (!std::isfinite(theta)) throw std::invalid_argument("expm_anti_hermitian: non-finite theta");
    const EigenSystem es = hermitian_eigensystem(h, herm_tol);

    const int n = h.dim();
    // V diag(e^{-i theta w}) V^t*
    ComplexMatrix scaled(n);
    for (int k = 0; k < n; ++k) {
        const Complex ph = std::polar(1.0, -theta * es.values[k]);
        for (int i = 0; i < n; ++i) scaled.at(i, k) = es.vectors.at(i, k) * ph;
    }
    return mat_mul(scaled, adjoint(es.vectors));
}

}  // namespace gphase
