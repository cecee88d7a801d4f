#pragma once

// Test-only oracles and generators. The oracles are deliberately independent
// of the library paths they check: expm_series never eigendecomposes, the
// Monte Carlo area estimator never touches the excess formula, and both use
// their own plain-loop matrix multiply.

#include <array>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "gphase/linalg.hpp"
#include "gphase/sphere.hpp"
#include "gphase/vec3.hpp"

namespace oracles {

using gphase::Complex;
using gphase::ComplexMatrix;
using gphase::Vec3;

inline ComplexMatrix mul_ref(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int n = a.dim();
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    return c;
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0;
    for (int i = 0; i < a.dim() * a.dim(); ++i) m = std::max(m, std::abs(a.data()[i]));
    return m;
}

/// exp(-i theta h) by scaling-and-squaring Taylor summation.
inline ComplexMatrix expm_series(const ComplexMatrix& h, double theta) {
    const int n = h.dim();
    ComplexMatrix m(n);
    for (int i = 0; i < n * n; ++i) m.data()[i] = Complex{0.0, -theta} * h.data()[i];

    double rowsum = 0;
    for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j) s += std::abs(m.at(i, j));
        rowsum = std::max(rowsum, s);
    }
    int squarings = 0;
    while (rowsum > 0.5) {
        rowsum /= 2;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);
    for (int i = 0; i < n * n; ++i) m.data()[i] *= scale;

    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 80; ++k) {
        term = mul_ref(term, m);
        for (int i = 0; i < n * n; ++i) term.data()[i] /= static_cast<double>(k);
        for (int i = 0; i < n * n; ++i) result.data()[i] += term.data()[i];
        if (max_abs(term) < 1e-20) break;
    }
    for (int i = 0; i < squarings; ++i) result = mul_ref(result, result);
    return result;
}

/// Closed-form spin-1/2 rotation: cos(t/2) I - i sin(t/2) (n . sigma).
inline ComplexMatrix qubit_rotation_closed_form(Vec3 n, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return ComplexMatrix::from_rows({
        {Complex{c, -s * n.z}, Complex{-s * n.y, -s * n.x}},
        {Complex{s * n.y, -s * n.x}, Complex{c, s * n.z}},
    });
}

inline double det3(Vec3 u, Vec3 v, Vec3 w) { return dot(u, cross(v, w)); }

struct McArea {
    double area = 0;
    double stderr_ = 0;
};

/// Monte Carlo area of a counterclockwise spherical triangle: uniform points
/// on S^2, classified by the winding condition (positive side of all three
/// oriented edge planes). Fixed seed for reproducibility.
inline McArea mc_spherical_triangle_area(Vec3 a, Vec3 b, Vec3 c, std::uint64_t nsamples,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uz(-1.0, 1.0);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * std::numbers::pi);

    const Vec3 nab = cross(a, b), nbc = cross(b, c), nca = cross(c, a);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < nsamples; ++i) {
        const double z = uz(rng);
        const double phi = uphi(rng);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const Vec3 p{r * std::cos(phi), r * std::sin(phi), z};
        if (dot(nab, p) > 0 && dot(nbc, p) > 0 && dot(nca, p) > 0) ++hits;
    }
    const double four_pi = 4.0 * std::numbers::pi;
    const double f = static_cast<double>(hits) / static_cast<double>(nsamples);
    return {four_pi * f, four_pi * std::sqrt(f * (1.0 - f) / static_cast<double>(nsamples))};
}

// ---------------------------------------------------------------------------
// random input generators

inline Vec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    while (true) {
        const Vec3 v{g(rng), g(rng), g(rng)};
        if (gphase::norm(v) > 1e-6) return gphase::normalized(v);
    }
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, int n, double radius = 1.0) {
    std::uniform_real_distribution<double> u(-radius, radius);
    ComplexMatrix m(n);
    for (int i = 0; i < n * n; ++i) m.data()[i] = Complex{u(rng), u(rng)};
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, int n, double radius = 1.0) {
    const ComplexMatrix m = random_matrix(rng, n, radius);
    ComplexMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
    return h;
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, int n) {
    return gphase::expm_anti_hermitian(random_hermitian(rng, n), 1.0);
}

inline std::vector<double> random_weights(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> w(n);
    double sum = 0;
    for (double& x : w) {
        x = u(rng) + 1e-3;
        sum += x;
    }
    for (double& x : w) x /= sum;
    return w;
}

/// Random well-separated triangle, counterclockwise as seen from outside.
inline std::array<Vec3, 3> random_ccw_triangle(std::mt19937_64& rng, double min_sep = 0.2) {
    while (true) {
        Vec3 a = random_unit(rng), b = random_unit(rng), c = random_unit(rng);
        const double sab = gphase::angle_between(a, b);
        const double sbc = gphase::angle_between(b, c);
        const double sca = gphase::angle_between(c, a);
        const double lim = std::numbers::pi - min_sep;
        if (sab < min_sep || sbc < min_sep || sca < min_sep) continue;
        if (sab > lim || sbc > lim || sca > lim) continue;
        if (std::abs(det3(a, b, c)) < 0.02) continue;  // nearly collinear
        if (det3(a, b, c) < 0) std::swap(b, c);
        return {a, b, c};
    }
}

/// Random triangle circuit of either orientation.
inline gphase::SphericalCircuit random_triangle_circuit(std::mt19937_64& rng) {
    auto tri = random_ccw_triangle(rng);
    if (rng() & 1) std::swap(tri[1], tri[2]);
    return gphase::SphericalCircuit::make_polygon({tri[0], tri[1], tri[2]});
}

}  // namespace oracles
