#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "gphase/spin.hpp"
#include "oracles.hpp"

using namespace gphase;

namespace {

constexpr double kPi = std::numbers::pi;

// max-norm of [jx, jy] - i jz
double commutator_defect(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
    const ComplexMatrix ab = mat_mul(a, b);
    const ComplexMatrix ba = mat_mul(b, a);
    double d = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            d = std::max(d, std::abs(ab.at(i, j) - ba.at(i, j) - Complex{0, 1} * c.at(i, j)));
    return d;
}

}  // namespace

TEST_CASE("build_spin: defining constructions") {
    const SpinSystem half = build_spin(1);
    CHECK(half.jz.at(0, 0) == Complex{0.5, 0});
    CHECK(half.jz.at(1, 1) == Complex{-0.5, 0});
    CHECK(half.jx.at(0, 1) == Complex{0.5, 0});
    CHECK(half.jx.at(1, 0) == Complex{0.5, 0});
    CHECK(half.jy.at(0, 1) == Complex{0, -0.5});
    CHECK(half.jy.at(1, 0) == Complex{0, 0.5});

    const SpinSystem one = build_spin(2);
    CHECK(one.jz.at(0, 0) == Complex{1, 0});
    CHECK(one.jz.at(1, 1) == Complex{0, 0});
    CHECK(one.jz.at(2, 2) == Complex{-1, 0});

    CHECK_THROWS_AS(build_spin(-1), std::invalid_argument);
}

TEST_CASE("build_spin: algebra for all two_j up to 10") {
    for (int two_j = 0; two_j <= 10; ++two_j) {
        const SpinSystem s = build_spin(two_j);
        CHECK(hermitian_defect(s.jx) < 1e-12);
        CHECK(hermitian_defect(s.jy) < 1e-12);
        CHECK(hermitian_defect(s.jz) < 1e-12);
        CHECK(commutator_defect(s.jx, s.jy, s.jz) < 1e-12);
        CHECK(commutator_defect(s.jy, s.jz, s.jx) < 1e-12);
        CHECK(commutator_defect(s.jz, s.jx, s.jy) < 1e-12);

        // casimir jx^2 + jy^2 + jz^2 = J(J+1) I
        const double jj = s.j() * (s.j() + 1);
        ComplexMatrix casimir(s.dim());
        for (const ComplexMatrix* op : {&s.jx, &s.jy, &s.jz}) {
            const ComplexMatrix sq = mat_mul(*op, *op);
            for (int i = 0; i < s.dim() * s.dim(); ++i) casimir.data()[i] += sq.data()[i];
        }
        double defect = 0;
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j)
                defect = std::max(defect,
                                  std::abs(casimir.at(i, j) - (i == j ? Complex{jj, 0} : Complex{})));
        CHECK(defect < 1e-12 * std::max(1.0, jj));
    }
}

TEST_CASE("two_m_values descend with the jz diagonal") {
    CHECK(two_m_values(3) == std::vector<int>{3, 1, -1, -3});
    CHECK(two_m_values(0) == std::vector<int>{0});
}

TEST_CASE("rotation_unitary: forced angles") {
    std::mt19937_64 rng(31);
    const SpinSystem half = build_spin(1);
    const SpinSystem one = build_spin(2);

    CHECK(max_abs_diff(rotation_unitary(half, Axis{0, 0, 1}, 0.0), ComplexMatrix::identity(2)) <
          1e-14);

    for (int rep = 0; rep < 5; ++rep) {
        const Axis n = oracles::random_unit(rng);
        ComplexMatrix minus_i2(2);
        minus_i2.at(0, 0) = minus_i2.at(1, 1) = -1.0;
        CHECK(max_abs_diff(rotation_unitary(half, n, 2.0 * kPi), minus_i2) < 1e-12);
        CHECK(max_abs_diff(rotation_unitary(one, n, 2.0 * kPi), ComplexMatrix::identity(3)) <
              1e-10);
    }

    CHECK_THROWS_AS(rotation_unitary(half, Vec3{0, 0, 2}, 1.0), std::invalid_argument);
}

TEST_CASE("rotation_unitary: 2pi parity (-1)^{2J}") {
    std::mt19937_64 rng(32);
    for (int two_j = 0; two_j <= 7; ++two_j) {
        const SpinSystem s = build_spin(two_j);
        const Axis n = oracles::random_unit(rng);
        const ComplexMatrix u = rotation_unitary(s, n, 2.0 * kPi);
        const double sign = (two_j % 2 == 0) ? 1.0 : -1.0;
        double defect = 0;
        for (int i = 0; i < s.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j)
                defect = std::max(defect,
                                  std::abs(u.at(i, j) - (i == j ? Complex{sign, 0} : Complex{})));
        CHECK(defect < 1e-10);
    }
}

TEST_CASE("rotation_unitary: unitarity and inverse composition up to J = 7") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> ang(-8, 8);
    for (int two_j : {1, 2, 5, 9, 14}) {
        const SpinSystem s = build_spin(two_j);
        for (int rep = 0; rep < 4; ++rep) {
            const Axis n = oracles::random_unit(rng);
            const double theta = ang(rng);
            const ComplexMatrix u = rotation_unitary(s, n, theta);
            CHECK(unitary_defect(u) < 1e-10);
            CHECK(max_abs_diff(mat_mul(u, rotation_unitary(s, n, -theta)),
                               ComplexMatrix::identity(s.dim())) < 1e-10);
        }
    }
}

TEST_CASE("rotation_unitary: spin-1/2 closed form") {
    std::mt19937_64 rng(34);
    const SpinSystem half = build_spin(1);
    std::uniform_real_distribution<double> ang(-8, 8);
    for (int rep = 0; rep < 30; ++rep) {
        const Axis n = oracles::random_unit(rng);
        const double theta = ang(rng);
        CHECK(max_abs_diff(rotation_unitary(half, n, theta),
                           oracles::qubit_rotation_closed_form(n, theta)) < 1e-12);
    }
}

TEST_CASE("maximally_mixed") {
    const DensityMatrix two = maximally_mixed(2);
    CHECK(two.mat().at(0, 0) == Complex{0.5, 0});
    CHECK(two.mat().at(1, 1) == Complex{0.5, 0});
    const DensityMatrix three = maximally_mixed(3);
    CHECK(std::abs(three.mat().at(0, 0) - Complex{1.0 / 3.0, 0}) < 1e-16);

    for (int dim = 1; dim <= 16; ++dim)
        CHECK(trace(maximally_mixed(dim).mat()) == Complex{1.0, 0.0});
}

TEST_CASE("diagonal_state") {
    const SpinSystem half = build_spin(1);
    const DensityMatrix up = diagonal_state(half, {1.0, 0.0});
    CHECK(up.mat().at(0, 0) == Complex{1, 0});
    CHECK(up.mat().at(1, 1) == Complex{0, 0});

    const DensityMatrix mixed = diagonal_state(half, {0.5, 0.5});
    CHECK(max_abs_diff(mixed.mat(), maximally_mixed(2).mat()) == 0.0);

    const SpinSystem one = build_spin(2);
    const DensityMatrix rho = diagonal_state(one, {0.5, 0.3, 0.2});
    const EigenSystem es = hermitian_eigensystem(rho.mat());
    CHECK(es.values[0] == 0.5);
    CHECK(es.values[1] == 0.3);
    CHECK(es.values[2] == 0.2);

    CHECK_THROWS_AS(diagonal_state(half, {1.2, -0.2}), std::invalid_argument);
    CHECK_THROWS_AS(diagonal_state(half, {0.5, 0.4}), std::invalid_argument);
    CHECK_THROWS_AS(diagonal_state(half, {1.0}), std::invalid_argument);
}

TEST_CASE("pure_state_along") {
    const SpinSystem half = build_spin(1);
    const DensityMatrix up = pure_state_along(half, Axis{0, 0, 1}, 1);
    CHECK(max_abs_diff(up.mat(), ComplexMatrix::from_rows({{1, 0}, {0, 0}})) < 1e-14);

    const DensityMatrix plus_x = pure_state_along(half, Axis{1, 0, 0}, 1);
    CHECK(max_abs_diff(plus_x.mat(),
                       ComplexMatrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})) < 1e-12);

    CHECK_THROWS_AS(pure_state_along(half, Axis{0, 0, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(pure_state_along(half, Axis{0, 0, 1}, 0), std::invalid_argument);
}

TEST_CASE("pure_state_along: eigenvector residual for random axes") {
    std::mt19937_64 rng(35);
    for (int two_j : {1, 2, 3, 5}) {
        const SpinSystem s = build_spin(two_j);
        for (int two_m : two_m_values(two_j)) {
            const Axis n = oracles::random_unit(rng);
            const DensityMatrix rho = pure_state_along(s, n, two_m);
            // (n . J) rho == m rho
            const ComplexMatrix lhs = mat_mul(spin_along(s, n), rho.mat());
            double resid = 0;
            for (int i = 0; i < s.dim() * s.dim(); ++i)
                resid = std::max(resid,
                                 std::abs(lhs.data()[i] - 0.5 * two_m * rho.mat().data()[i]));
            CHECK(resid < 1e-10);
            CHECK(std::abs(trace(rho.mat()) - Complex{1, 0}) < 1e-12);
        }
    }
}

TEST_CASE("diagonal_state_along reproduces the spectrum on the rotated basis") {
    std::mt19937_64 rng(36);
    for (int two_j : {1, 2, 4}) {
        const SpinSystem s = build_spin(two_j);
        const Axis n = oracles::random_unit(rng);
        const std::vector<double> w = oracles::random_weights(rng, s.dim());
        const DensityMatrix rho = diagonal_state_along(s, n, w);

        // each (n.J) eigenvector must be a rho eigenvector with the matching weight
        const EigenSystem es = hermitian_eigensystem(spin_along(s, n));
        for (int k = 0; k < s.dim(); ++k) {
            for (int i = 0; i < s.dim(); ++i) {
                Complex rv{0, 0};
                for (int j = 0; j < s.dim(); ++j) rv += rho.mat().at(i, j) * es.vectors.at(j, k);
                CHECK(std::abs(rv - w[k] * es.vectors.at(i, k)) < 1e-11);
            }
        }
    }
}

TEST_CASE("every DensityMatrix constructor output satisfies the invariants") {
    std::mt19937_64 rng(37);
    auto check_invariants = [](const DensityMatrix& rho) {
        CHECK(hermitian_defect(rho.mat()) < 1e-10);
        CHECK(std::abs(trace(rho.mat()) - Complex{1, 0}) < 1e-12);
        const EigenSystem es = hermitian_eigensystem(rho.mat());
        for (double w : es.values) CHECK(w >= -1e-10);
    };
    for (int two_j : {0, 1, 3, 6}) {
        const SpinSystem s = build_spin(two_j);
        check_invariants(maximally_mixed(s.dim()));
        check_invariants(diagonal_state(s, oracles::random_weights(rng, s.dim())));
        check_invariants(diagonal_state_along(s, oracles::random_unit(rng),
                                              oracles::random_weights(rng, s.dim())));
        check_invariants(pure_state_along(s, oracles::random_unit(rng), s.two_j));
    }

    // invalid matrices are rejected
    CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix::from_rows({{1, 1}, {0, 0}})),
                    std::invalid_argument);  // not Hermitian
    CHECK_THROWS_AS(DensityMatrix::from_matrix(ComplexMatrix::identity(2)),
                    std::invalid_argument);  // trace 2
    CHECK_THROWS_AS(
        DensityMatrix::from_matrix(ComplexMatrix::from_rows({{2, 0}, {0, -1}})),
        std::invalid_argument);  // negative eigenvalue
}
