#pragma once

#include <array>
#include <span>
#include <vector>

#include "diagrec/matrix.hpp"

namespace diagrec {

struct EigenPair {
    Complex value;
    int multiplicity;  // algebraic
};

struct Spectrum {
    std::vector<EigenPair> distinct;  // sorted by (re, im)
    bool diagonalizable = true;

    // All eigenvalues with multiplicity, sorted by (re, im).
    std::vector<Complex> flattened() const;
};

// Coefficients a_1..a_n of the monic characteristic polynomial
// lambda^n + a_1 lambda^(n-1) + ... + a_n, via the Faddeev-LeVerrier
// trace recursion.
std::vector<Complex> characteristic_polynomial(const Matrix& m);

// Durand-Kerner iteration on a monic polynomial given by its tail a_1..a_n.
// Initial points sit on a circle with a fixed-seed random perturbation so
// repeated runs are identical; stops at step size 1e-13 or 500 iterations.
std::vector<Complex> polynomial_roots(std::span<const Complex> monic_tail);

// Eigenvalues with algebraic multiplicities (clustered Durand-Kerner roots)
// and a diagonalizability flag from rank tests at each distinct eigenvalue.
// Supported up to n = 8.
Spectrum eigenvalues(const Matrix& m);

// Rank via full-pivoting elimination; pivots at or below the threshold stop.
int matrix_rank(const Matrix& m, double threshold);

// Basis of the null space of m, with the same pivot threshold.
std::vector<Vector> null_space(const Matrix& m, double threshold);

// Principal T-th root of a diagonalizable invertible matrix: every
// eigenvalue maps to exp(log|l|/T + i*arg(l)/T) with arg in (-pi, pi].
// Defective input raises DefectiveMatrixError (no Jordan machinery here);
// singular input raises SingularMatrixError.
Matrix matrix_root(const Matrix& m, int T);

struct Quadratic {
    Complex a2, a1, a0;
    Complex discriminant;          // a1^2 - 4 a2 a0
    std::array<Complex, 2> roots;  // sorted by (re, im) descending
};

// Numerically stable complex quadratic formula; a2 = 0 is a ValidationError.
Quadratic solve_quadratic(Complex a2, Complex a1, Complex a0);

} // namespace diagrec
