#pragma once

#include <vector>

#include "gphase/linalg.hpp"
#include "gphase/vec3.hpp"

namespace gphase {

/// Angular-momentum operator triple for spin J, with 2J passed as an integer
/// so half-integer spins stay exact. Basis convention everywhere: the jz
/// diagonal descends from +J to -J, and every eigenvalue/weight list follows
/// that order.
struct SpinSystem {
    int two_j = 0;
    ComplexMatrix jx, jy, jz;

    int dim() const noexcept { return two_j + 1; }
    double j() const noexcept { return two_j / 2.0; }
};

/// Ladder-operator construction: jz = diag(J, J-1, ..., -J), J+/- with matrix
/// elements sqrt(J(J+1) - m(m+-1)).
SpinSystem build_spin(int two_j);

/// The 2m values along the jz diagonal, descending: two_j, two_j-2, ..., -two_j.
std::vector<int> two_m_values(int two_j);

/// n . J for a unit axis n.
ComplexMatrix spin_along(const SpinSystem& s, const Axis& n);

/// exp(-i * theta * n . J); throws if n is not unit length.
ComplexMatrix rotation_unitary(const SpinSystem& s, const Axis& n, double theta);

/// Hermitian, unit-trace, positive-semidefinite state. Construction validates
/// all three invariants (eigenvalues >= -1e-10 via the Jacobi eigensolver).
class DensityMatrix {
public:
    static DensityMatrix from_matrix(ComplexMatrix m, const Tolerances& tol = {});

    const ComplexMatrix& mat() const noexcept { return mat_; }
    int dim() const noexcept { return mat_.dim(); }

private:
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

/// (1/dim) * I — the unpolarized state.
DensityMatrix maximally_mixed(int dim);

/// diag(weights) in the jz eigenbasis; weights are ordered +J..-J, must be
/// nonnegative and sum to 1 within 1e-12.
DensityMatrix diagonal_state(const SpinSystem& s, const std::vector<double>& weights);

/// Same spectrum, but diagonal in the (n . J) eigenbasis.
DensityMatrix diagonal_state_along(const SpinSystem& s, const Axis& n,
                                   const std::vector<double>& weights);

/// Rank-1 projector onto the (n . J) eigenvector with eigenvalue m (= two_m/2).
DensityMatrix pure_state_along(const SpinSystem& s, const Axis& n, int two_m);

}  // namespace gphase
