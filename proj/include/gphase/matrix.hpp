#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace gphase {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Dimensions stay tiny here
/// (2J+1 <= ~16), so everything is a flat buffer and plain dense loops.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    /// Zero matrix of the given dimension (dim >= 1).
    explicit ComplexMatrix(int dim);

    /// Takes ownership of row-major entries; entries.size() must equal dim*dim
    /// and every entry must be finite.
    ComplexMatrix(int dim, std::vector<Complex> entries);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    int dim() const noexcept { return dim_; }
    bool empty() const noexcept { return dim_ == 0; }

    Complex& at(int r, int c) noexcept {
        return entries_[static_cast<std::size_t>(r) * dim_ + c];
    }
    const Complex& at(int r, int c) const noexcept {
        return entries_[static_cast<std::size_t>(r) * dim_ + c];
    }

    Complex* data() noexcept { return entries_.data(); }
    const Complex* data() const noexcept { return entries_.data(); }

    bool all_finite() const noexcept;

    bool operator==(const ComplexMatrix&) const = default;

private:
    int dim_ = 0;
    std::vector<Complex> entries_;
};

/// Max |a(r,c) - b(r,c)| over all entries; matrices must share dimensions.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Numeric thresholds shared across the library. All strictly positive.
struct Tolerances {
    double herm_tol = 1e-10;  // Hermiticity: max |H - H^t*| entry
    double unit_tol = 1e-10;  // unitarity: max |U U^t* - I| entry
    double sing_tol = 1e-9;   // visibility below this flags a phase singularity

    void validate() const;  // throws std::invalid_argument unless all > 0

    bool operator==(const Tolerances&) const = default;
};

}  // namespace gphase
