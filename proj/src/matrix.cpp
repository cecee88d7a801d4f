#include "gphase/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace gphase {

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
    entries_.assign(static_cast<std::size_t>(dim) * dim, Complex{0.0, 0.0});
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(dim) * dim)
        throw std::invalid_argument("ComplexMatrix: entry count does not match dim*dim");
    if (!all_finite()) throw std::invalid_argument("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
    const int dim = static_cast<int>(rows.size());
    std::vector<Complex> entries;
    entries.reserve(static_cast<std::size_t>(dim) * dim);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("ComplexMatrix: ragged row list");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(dim, std::move(entries));
}

bool ComplexMatrix::all_finite() const noexcept {
    for (const Complex& e : entries_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0;
    const int n = a.dim();
    for (int i = 0; i < n * n; ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

void Tolerances::validate() const {
    if (!(herm_tol > 0) || !(unit_tol > 0) || !(sing_tol > 0))
        throw std::invalid_argument("Tolerances: all thresholds must be strictly positive");
}

}  // namespace gphase
