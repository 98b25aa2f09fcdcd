#pragma once

#include <span>

#include "diagrec/lattice.hpp"
#include "diagrec/matrix.hpp"

namespace diagrec {

struct AffineMap {
    Matrix linear;
    Vector offset;

    static AffineMap from_linear(Matrix m);

    Vector apply(const Vector& x) const;
};

// Two-time recurrence whose evaluation order is part of the problem: from
// x0, take t1 steps of step1 along axis 1, then t2 steps of step2.
struct PathRecurrence {
    AffineMap step1, step2;
    Vector x0;
};

Vector solve_path(const PathRecurrence& rec, const MultiIndex& t);

// Constant-coefficient closed form A2^t2 A1^t1 x0 via repeated squaring.
// The product order encodes the path; A1 and A2 need not commute.
Vector closed_form_constant(const Matrix& a1, const Matrix& a2, const Vector& x0,
                            const MultiIndex& t);

// m-axis generalization: all steps of axis 1 first, then axis 2, and so on.
Vector solve_path_chained(std::span<const AffineMap> steps, const Vector& x0, const MultiIndex& t);

} // namespace diagrec
