#pragma once

#include <vector>

#include "gphase/matrix.hpp"

namespace gphase {

/// a * b; throws std::invalid_argument on dimension mismatch or non-finite input.
ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum of diagonal entries.
Complex trace(const ComplexMatrix& a);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix& a);

/// Max |a - a^t*| entry.
double hermitian_defect(const ComplexMatrix& a);

/// Max |a a^t* - I| entry.
double unitary_defect(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);

/// Eigenvalues (sorted descending) and matching orthonormal eigenvector
/// columns of a Hermitian matrix, computed by cyclic Jacobi rotations.
struct EigenSystem {
    std::vector<double> values;
    ComplexMatrix vectors;  // column k pairs with values[k]
};

EigenSystem hermitian_eigensystem(const ComplexMatrix& h, double herm_tol = 1e-10);

/// exp(-i * theta * h) for Hermitian h, via the spectral decomposition of h.
/// The result is unitary up to roundoff. Throws if h is not Hermitian within
/// herm_tol or if any input is non-finite.
ComplexMatrix expm_anti_hermitian(const ComplexMatrix& h, double theta, double herm_tol = 1e-10);

namespace detail {
/// In-place Jacobi eigensolver on raw buffers, allocation-free: a (n x n,
/// overwritten), v (receives eigenvectors as columns), w (receives
/// eigenvalues). Output is sorted descending. a must be Hermitian; the
/// caller has already checked that.
void jacobi_hermitian(Complex* a, Complex* v, double* w, int n);
}  // namespace detail

}  // namespace gphase
