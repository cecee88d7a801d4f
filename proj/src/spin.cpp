#include "gphase/spin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gphase {

SpinSystem build_spin(int two_j) {
    if (two_j < 0) throw std::invalid_argument("build_spin: two_j must be >= 0");
    const int dim = two_j + 1;
    const double j = two_j / 2.0;

    SpinSystem s;
    s.two_j = two_j;
    s.jz = ComplexMatrix(dim);
    for (int k = 0; k < dim; ++k) s.jz.at(k, k) = j - k;  // +J down to -J

    // J+ |j,m> = sqrt(J(J+1) - m(m+1)) |j,m+1>; row index of m is k = J - m.
    ComplexMatrix jplus(dim);
    for (int k = 1; k < dim; ++k) {
        const double m = j - k;
        jplus.at(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }

    s.jx = ComplexMatrix(dim);
    s.jy = ComplexMatrix(dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            const Complex up = jplus.at(r, c);
            const Complex dn = std::conj(jplus.at(c, r));  // J- = (J+)^t*
            s.jx.at(r, c) = 0.5 * (up + dn);
            s.jy.at(r, c) = Complex{0.0, -0.5} * (up - dn);
        }
    }
    return s;
}

std::vector<int> two_m_values(int two_j) {
    std::vector<int> ms;
    ms.reserve(two_j + 1);
    for (int tm = two_j; tm >= -two_j; tm -= 2) ms.push_back(tm);
    return ms;
}

ComplexMatrix spin_along(const SpinSystem& s, const Axis& n) {
    if (!is_unit(n)) throw std::invalid_argument("spin_along: axis is not unit length");
    const int dim = s.dim();
    ComplexMatrix h(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            h.at(r, c) = n.x * s.jx.at(r, c) + n.y * s.jy.at(r, c) + n.z * s.jz.at(r, c);
    return h;
}

ComplexMatrix rotation_unitary(const SpinSystem& s, const Axis& n, double theta) {
    if (!std::isfinite(theta))
        throw std::invalid_argument("rotation_unitary: non-finite angle");
    return expm_anti_hermitian(spin_along(s, n), theta);
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, const Tolerances& tol) {
    tol.validate();
    if (!m.all_finite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
    if (hermitian_defect(m) >= tol.herm_tol)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    const Complex tr = trace(m);
    if (std::abs(tr - 1.0) >= 1e-12)
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    const EigenSystem es = hermitian_eigensystem(m, tol.herm_tol);
    for (double w : es.values)
        if (w < -1e-10)
            throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(w));
    return DensityMatrix(std::move(m));
}

DensityMatrix maximally_mixed(int dim) {
    if (dim < 1) throw std::invalid_argument("maximally_mixed: dim must be >= 1");
    ComplexMatrix m(dim);
    // The last entry absorbs the rounding of the 1/dim partial sum so the
    // trace is exactly 1 (the subtraction is exact for partial >= 1/2).
    double partial = 0;
    for (int i = 0; i + 1 < dim; ++i) {
        m.at(i, i) = 1.0 / dim;
        partial += 1.0 / dim;
    }
    m.at(dim - 1, dim - 1) = 1.0 - partial;
    return DensityMatrix::from_matrix(std::move(m));
}

namespace {

void check_weights(const SpinSystem& s, const std::vector<double>& weights) {
    if (static_cast<int>(weights.size()) != s.dim())
        throw std::invalid_argument("diagonal_state: need exactly 2J+1 weights");
    double sum = 0;
    for (double w : weights) {
        if (!(w >= 0)) throw std::invalid_argument("diagonal_state: negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) >= 1e-12)
        throw std::invalid_argument("diagonal_state: weights must sum to 1 (got " +
                                    std::to_string(sum) + ")");
}

}  // namespace

DensityMatrix diagonal_state(const SpinSystem& s, const std::vector<double>& weights) {
    check_weights(s, weights);
    ComplexMatrix m(s.dim());
    for (int k = 0; k < s.dim(); ++k) m.at(k, k) = weights[k];
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix diagonal_state_along(const SpinSystem& s, const Axis& n,
                                   const std::vector<double>& weights) {
    check_weights(s, weights);
    const EigenSystem es = hermitian_eigensystem(spin_along(s, n));
    // es.values descend from +J to -J, matching the weight ordering.
    const int dim = s.dim();
    ComplexMatrix m(dim);
    for (int k = 0; k < dim; ++k) {
        if (weights[k] == 0) continue;
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                m.at(r, c) += weights[k] * es.vectors.at(r, k) * std::conj(es.vectors.at(c, k));
    }
    return DensityMatrix::from_matrix(std::move(m));
}

DensityMatrix pure_state_along(const SpinSystem& s, const Axis& n, int two_m) {
    if (std::abs(two_m) > s.two_j || ((two_m - s.two_j) % 2) != 0)
        throw std::invalid_argument("pure_state_along: two_m outside {-two_j, ..., two_j}");
    const EigenSystem es = hermitian_eigensystem(spin_along(s, n));
    const double m = two_m / 2.0;
    // eigenvalues are J, J-1, ..., -J in descending order; pick index J - m
    const int k = (s.two_j - two_m) / 2;
    if (std::abs(es.values[k] - m) > 1e-8)
        throw std::runtime_error("pure_state_along: eigenvalue ladder mismatch");
    const int dim = s.dim();
    ComplexMatrix proj(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            proj.at(r, c) = es.vectors.at(r, k) * std::conj(es.vectors.at(c, k));
    return DensityMatrix::from_matrix(std::move(proj));
}

}  // namespace gphase
