#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "diagrec/floquet.hpp"
#include "diagrec/recurrence.hpp"

using namespace diagrec;

namespace {

Matrix rotation_scaling(double angle, double scale) {
    return Matrix{{scale * std::cos(angle), -scale * std::sin(angle)},
                  {scale * std::sin(angle), scale * std::cos(angle)}};
}

// Componentwise periods (2, 3), diagonal period 6. Rotation-scalings keep
// every entry invertible and make the exact monodromy easy to predict.
CoefficientProvider periodic_family() {
    std::vector<Matrix> entries;
    for (int k = 0; k < 6; ++k)
        entries.push_back(rotation_scaling(0.2 + 0.1 * k, 0.9 + 0.05 * k));
    return CoefficientProvider::table(2, {2, 3}, std::move(entries));
}

double scale_product() {
    double p = 1.0;
    for (int k = 0; k < 6; ++k) p *= 0.9 + 0.05 * k;
    return p;
}

DiagonalRecurrence homogeneous_problem(const CoefficientProvider& A) {
    std::vector<FaceTable> faces;
    for (int axis = 0; axis < 2; ++axis) {
        FaceTable face;
        face.extents = {10};
        for (std::uint64_t j = 0; j < 10; ++j)
            face.values.push_back(Vector{1.0 + 0.1 * static_cast<double>(j),
                                         axis == 0 ? 0.5 : 0.5 - 0.2 * static_cast<double>(j)});
        faces.push_back(std::move(face));
    }
    return DiagonalRecurrence(A, ForcingProvider::zero(2, 2),
                              BoundaryData(2, 2, ExtensionPolicy::Strict, std::move(faces)));
}

} // namespace

TEST_CASE("periodicity check") {
    const auto A = periodic_family();
    const std::vector<std::uint64_t> window{13, 13};
    CHECK(check_diagonal_periodicity(A, 6, window).periodic);
    CHECK(check_diagonal_periodicity(A, 12, window).periodic);

    const auto wrong = check_diagonal_periodicity(A, 4, window);
    CHECK_FALSE(wrong.periodic);
    REQUIRE(wrong.counterexample.has_value());

    // No testable pair in a tiny window.
    CHECK_THROWS_AS(check_diagonal_periodicity(A, 6, std::vector<std::uint64_t>{3, 3}),
                    ValidationError);
}

TEST_CASE("declared period must divide the requested one") {
    const auto A = periodic_family();
    CHECK_NOTHROW(FloquetDecomposition(A, 6));
    CHECK_NOTHROW(FloquetDecomposition(A, 12));
    CHECK_THROWS_AS(FloquetDecomposition(A, 3), ValidationError);
}

TEST_CASE("monodromy of commuting rotation-scalings") {
    const auto A = periodic_family();
    const FloquetDecomposition dec(A, 6);
    // The six factors commute, so D is the same rotation-scaling on every
    // diagonal: total angle 2.7, total scale the product of the six scales.
    const Matrix expected = rotation_scaling(2.7, scale_product());
    CHECK(relative_residual(dec.monodromy(MultiIndex{0, 0}), expected) < 1e-12);
    CHECK(relative_residual(dec.monodromy(MultiIndex{3, 5}), expected) < 1e-12);

    const auto lambdas = dec.multipliers(MultiIndex{2, 0}).flattened();
    REQUIRE(lambdas.size() == 2);
    CHECK(std::abs(std::abs(lambdas[0]) - scale_product()) < 1e-10);
    CHECK(std::abs(std::abs(lambdas[1]) - scale_product()) < 1e-10);
}

TEST_CASE("the root recovers the monodromy") {
    const auto A = periodic_family();
    const FloquetDecomposition dec(A, 6);
    const MultiIndex t{1, 4};
    CHECK(relative_residual(matrix_power(dec.root(t), 6), dec.monodromy(t)) < 1e-10);

    // Normal monodromy: the principal root is again a rotation-scaling.
    const Matrix expected = rotation_scaling(2.7 / 6.0, std::pow(scale_product(), 1.0 / 6.0));
    CHECK(relative_residual(dec.root(t), expected) < 1e-8);
}

TEST_CASE("constant coefficients reduce to matrix powers") {
    const Matrix a{{0.5, 0.0}, {0.0, 2.0}};
    const auto A = CoefficientProvider::constant(2, a);

    const FloquetDecomposition t1(A, 1);
    CHECK(relative_residual(t1.monodromy(MultiIndex{4, 7}), a) < 1e-14);
    CHECK(relative_residual(t1.root(MultiIndex{4, 7}), a) < 1e-14);

    const FloquetDecomposition t2(A, 2);
    CHECK(relative_residual(t2.monodromy(MultiIndex{0, 0}), a * a) < 1e-14);
    const auto lambdas = t2.multipliers(MultiIndex{0, 0}).flattened();
    REQUIRE(lambdas.size() == 2);
    CHECK(std::abs(lambdas[0] - Complex(0.25)) < 1e-10);
    CHECK(std::abs(lambdas[1] - Complex(4.0)) < 1e-10);

    // P(t) = A^mu B^(-mu) = I for constant families at T = 1.
    CHECK(relative_residual(floquet_P(A, 1, MultiIndex{3, 6}), Matrix::identity(2)) < 1e-12);
}

TEST_CASE("periodic factor has diagonal period T") {
    const auto A = periodic_family();
    for (const MultiIndex& t : {MultiIndex{0, 2}, MultiIndex{3, 1}, MultiIndex{4, 4}}) {
        const Matrix p = floquet_P(A, 6, t);
        const Matrix p_up = floquet_P(A, 6, shift(t, 6));
        CHECK(relative_residual(p_up, p) < 1e-8);
    }
}

TEST_CASE("power identity for the fundamental matrix") {
    const auto A = periodic_family();
    CHECK(verify_power_identity(A, 6, MultiIndex{0, 0}, 3) < 1e-8);
    CHECK(verify_power_identity(A, 6, MultiIndex{2, 5}, 2) < 1e-8);
    CHECK(verify_power_identity(A, 6, MultiIndex{7, 1}, 1) < 1e-8);
}

TEST_CASE("transport between the variable and constant systems") {
    const auto A = periodic_family();
    const auto rec = homogeneous_problem(A);
    const std::vector<std::uint64_t> window{9, 9};
    const SolutionField x = solve_iterative(rec, window);

    const SolutionField y = transport_solution(A, 6, x, TransportDirection::Inverse);
    const SolutionField x_back = transport_solution(A, 6, y, TransportDirection::Forward);

    MultiIndex t = x.first();
    do {
        CHECK((x.at(t) - x_back.at(t)).inf_norm() < 1e-9 * std::max(1.0, x.at(t).inf_norm()));
    } while (x.next(t));

    // A field that does not solve the A-system is rejected by the contract
    // check before any transport happens.
    SolutionField corrupted = x;
    corrupted.set(MultiIndex{4, 4}, Vector{1000.0, -1000.0});
    CHECK_THROWS_AS(transport_solution(A, 6, corrupted, TransportDirection::Inverse),
                    ValidationError);
}
