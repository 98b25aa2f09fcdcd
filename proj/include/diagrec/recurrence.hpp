#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "diagrec/boundary.hpp"
#include "diagrec/lattice.hpp"
#include "diagrec/matrix.hpp"
#include "diagrec/providers.hpp"

namespace diagrec {

// First-order diagonal recurrence x(t + 1) = A(t) x(t) + b(t) on N^m with
// boundary data on the faces t^beta = 0.
struct DiagonalRecurrence {
    int m, n;
    CoefficientProvider A;
    ForcingProvider b;
    BoundaryData boundary;

    DiagonalRecurrence(CoefficientProvider coeffs, ForcingProvider forcing, BoundaryData bdata);
};

// Dense solution values over a rectangular window of N^m (exclusive upper
// bounds per axis), stored row-major in lexicographic order.
class SolutionField {
public:
    SolutionField(int m, int n, std::vector<std::uint64_t> window);

    int dimension() const { return m_; }
    int order() const { return n_; }
    std::span<const std::uint64_t> window() const { return window_; }
    std::size_t point_count() const { return points_; }

    bool in_window(const MultiIndex& t) const;
    Vector at(const MultiIndex& t) const;
    void set(const MultiIndex& t, const Vector& v);

    Complex component(const MultiIndex& t, int c) const;

    // Lexicographic point enumeration: first(), then next() until false.
    MultiIndex first() const;
    bool next(MultiIndex& t) const;

    bool operator==(const SolutionField&) const = default;

private:
    std::size_t index_of(const MultiIndex& t) const;

    int m_, n_;
    std::vector<std::uint64_t> window_;
    std::size_t points_;
    std::vector<Complex> data_;
};

// Closed-form evaluation at a single point: chain product against the
// boundary layer plus the telescoped forcing sum, using O(mu(t)) matrix
// multiplies via incremental prefix products.
Vector solve_explicit(const DiagonalRecurrence& rec, const MultiIndex& t);

enum class SweepOrder {
    ByLevel,        // all diagonals advance one level per pass (serial reference)
    Lexicographic,  // single lexicographic scan; predecessors come first
    DiagonalLines,  // one diagonal at a time; independent lines, OpenMP-parallel
};

// Grid fill over the window. Every order performs the identical update per
// cell, so the resulting fields are bitwise equal; DiagonalLines with
// threads > 1 distributes independent diagonals over an OpenMP team.
SolutionField solve_iterative(const DiagonalRecurrence& rec,
                              std::span<const std::uint64_t> window,
                              SweepOrder order = SweepOrder::DiagonalLines, int threads = 1);

// Phi(t) = A(t-1) A(t-2*1) ... A(t-mu(t)*1); the identity when mu(t) = 0.
Matrix fundamental_matrix(const CoefficientProvider& A, const MultiIndex& t);
Matrix fundamental_matrix(const DiagonalRecurrence& rec, const MultiIndex& t);

// x(t) = Phi(t) f_beta for homogeneous problems; nonzero forcing is a
// contract violation.
Vector solve_homogeneous_via_phi(const DiagonalRecurrence& rec, const MultiIndex& t);

// Max relative step residual ||x(t+1) - (A(t) x(t) + b(t))||_inf over interior
// points, scaled by max(1, ||x(t+1)||_inf). Pass b = nullptr for homogeneous.
double recurrence_residual(const SolutionField& field, const CoefficientProvider& A,
                           const ForcingProvider* b = nullptr);

} // namespace diagrec
