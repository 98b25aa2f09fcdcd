#include "diagrec/recurrence.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diagrec {

DiagonalRecurrence::DiagonalRecurrence(CoefficientProvider coeffs, ForcingProvider forcing,
                                       BoundaryData bdata)
    : m(coeffs.dimension()), n(coeffs.order()), A(std::move(coeffs)), b(std::move(forcing)),
      boundary(std::move(bdata)) {
    if (m < 2)
        throw ValidationError("diagonal recurrences need m >= 2");
    if (b.dimension() != m || b.order() != n)
        throw ValidationError("forcing provider shape does not match the coefficients");
    if (boundary.dimension() != m || boundary.order() != n)
        throw ValidationError("boundary data shape does not match the coefficients");
}

SolutionField::SolutionField(int m, int n, std::vector<std::uint64_t> window)
    : m_(m), n_(n), window_(std::move(window)) {
    if (m_ < 1 || n_ < 1)
        throw ValidationError("solution field needs m >= 1 and n >= 1");
    if (static_cast<int>(window_.size()) != m_)
        throw ValidationError("solution field window must have one extent per axis");
    points_ = 1;
    for (auto e : window_) {
        if (e == 0)
            throw ValidationError("solution field window extents must be positive");
        points_ *= static_cast<std::size_t>(e);
    }
    data_.assign(points_ * static_cast<std::size_t>(n_), Complex{});
}

bool SolutionField::in_window(const MultiIndex& t) const {
    if (t.dimension() != m_) return false;
    for (int i = 0; i < m_; ++i)
        if (t[i] >= window_[static_cast<std::size_t>(i)]) return false;
    return true;
}

std::size_t SolutionField::index_of(const MultiIndex& t) const {
    std::size_t idx = 0;
    for (int i = 0; i < m_; ++i)
        idx = idx * static_cast<std::size_t>(window_[static_cast<std::size_t>(i)]) +
              static_cast<std::size_t>(t[i]);
    return idx * static_cast<std::size_t>(n_);
}

Vector SolutionField::at(const MultiIndex& t) const {
    if (!in_window(t))
        throw ValidationError("field read outside the window at t=" + t.to_string());
    const std::size_t base = index_of(t);
    Vector v(static_cast<std::size_t>(n_));
    for (int c = 0; c < n_; ++c) v[static_cast<std::size_t>(c)] = data_[base + static_cast<std::size_t>(c)];
    return v;
}

void SolutionField::set(const MultiIndex& t, const Vector& v) {
    if (!in_window(t))
        throw ValidationError("field write outside the window at t=" + t.to_string());
    if (static_cast<int>(v.size()) != n_)
        throw ValidationError("field write with a vector of the wrong size");
    const std::size_t base = index_of(t);
    for (int c = 0; c < n_; ++c) data_[base + static_cast<std::size_t>(c)] = v[static_cast<std::size_t>(c)];
}

Complex SolutionField::component(const MultiIndex& t, int c) const {
    if (!in_window(t))
        throw ValidationError("field read outside the window at t=" + t.to_string());
    if (c < 0 || c >= n_)
        throw ValidationError("field component out of range");
    return data_[index_of(t) + static_cast<std::size_t>(c)];
}

MultiIndex SolutionField::first() const {
    return MultiIndex(std::vector<std::uint64_t>(static_cast<std::size_t>(m_), 0));
}

bool SolutionField::next(MultiIndex& t) const {
    for (int i = m_; i-- > 0;) {
        if (++t[i] < window_[static_cast<std::size_t>(i)]) return true;
        t[i] = 0;
    }
    return false;
}

namespace {

// Boundary value of the recurrence at a point with mu(t) = 0.
Vector boundary_value(const DiagonalRecurrence& rec, const MultiIndex& t) {
    const auto axis = rec.boundary.boundary_axis(0, t);
    if (!axis)
        throw ValidationError("boundary evaluation at an interior point t=" + t.to_string());
    return rec.boundary.read(0, *axis, t);
}

} // namespace

Vector solve_explicit(const DiagonalRecurrence& rec, const MultiIndex& t) {
    if (t.dimension() != rec.m)
        throw ValidationError("solve_explicit point has the wrong dimension");
    const std::uint64_t level = mu(t);
    if (level == 0)
        return boundary_value(rec, t);

    // x(t) = A(t-1)...A(t-mu*1) f + b(t-1) + sum_{k=2..mu} A(t-1)...A(t-(k-1)*1) b(t-k*1).
    const MultiIndex base = shift(t, -static_cast<std::int64_t>(level));
    Vector acc = rec.b(shift(t, -1));
    Matrix prefix = rec.A(shift(t, -1));
    for (std::uint64_t k = 2; k <= level; ++k) {
        acc += prefix * rec.b(shift(t, -static_cast<std::int64_t>(k)));
        prefix = prefix * rec.A(shift(t, -static_cast<std::int64_t>(k)));
    }
    return prefix * boundary_value(rec, base) + acc;
}

namespace {

// One diagonal line: seed at the base from the boundary, then walk up the
// levels. Identical arithmetic to the other sweep orders.
void fill_line(const DiagonalRecurrence& rec, SolutionField& field, const MultiIndex& base,
               const Matrix* hoisted_A, const Vector* hoisted_b) {
    MultiIndex t = base;
    Vector x = boundary_value(rec, t);
    field.set(t, x);
    while (true) {
        MultiIndex up = shift(t, 1);
        if (!field.in_window(up)) break;
        x = (hoisted_A ? *hoisted_A : rec.A(t)) * x + (hoisted_b ? *hoisted_b : rec.b(t));
        field.set(up, x);
        t = up;
    }
}

std::vector<MultiIndex> diagonal_bases(const SolutionField& field) {
    std::vector<MultiIndex> bases;
    MultiIndex t = field.first();
    do {
        if (mu(t) == 0) bases.push_back(t);
    } while (field.next(t));
    return bases;
}

} // namespace

SolutionField solve_iterative(const DiagonalRecurrence& rec, std::span<const std::uint64_t> window,
                              SweepOrder order, int threads) {
    SolutionField field(rec.m, rec.n,
                        std::vector<std::uint64_t>(window.begin(), window.end()));

    // Constant providers get queried once, not per cell.
    Matrix hoisted_A;
    Vector hoisted_b;
    const Matrix* pA = nullptr;
    const Vector* pb = nullptr;
    const MultiIndex origin = field.first();
    if (rec.A.kind() == CoefficientProvider::Kind::Constant) {
        hoisted_A = rec.A(origin);
        pA = &hoisted_A;
    }
    if (rec.b.kind() == ForcingProvider::Kind::Constant) {
        hoisted_b = rec.b(origin);
        pb = &hoisted_b;
    }

    switch (order) {
    case SweepOrder::Lexicographic: {
        MultiIndex t = field.first();
        do {
            if (mu(t) == 0) {
                field.set(t, boundary_value(rec, t));
            } else {
                const MultiIndex prev = shift(t, -1);
                field.set(t, (pA ? *pA : rec.A(prev)) * field.at(prev) + (pb ? *pb : rec.b(prev)));
            }
        } while (field.next(t));
        break;
    }
    case SweepOrder::ByLevel: {
        const auto bases = diagonal_bases(field);
        for (const auto& base : bases) field.set(base, boundary_value(rec, base));
        std::uint64_t max_level = *std::min_element(window.begin(), window.end()) - 1;
        for (std::uint64_t level = 1; level <= max_level; ++level) {
            for (const auto& base : bases) {
                const MultiIndex t = shift(base, static_cast<std::int64_t>(level));
                if (!field.in_window(t)) continue;
                const MultiIndex prev = shift(t, -1);
                field.set(t, (pA ? *pA : rec.A(prev)) * field.at(prev) + (pb ? *pb : rec.b(prev)));
            }
        }
        break;
    }
    case SweepOrder::DiagonalLines: {
        const auto bases = diagonal_bases(field);
        const auto count = static_cast<std::int64_t>(bases.size());
#ifdef _OPENMP
        if (threads > 1) {
            // Exceptions may not unwind out of the parallel region; capture
            // the first one and rethrow after the team joins.
            std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(static) num_threads(threads)
            for (std::int64_t i = 0; i < count; ++i) {
                try {
                    fill_line(rec, field, bases[static_cast<std::size_t>(i)], pA, pb);
                } catch (...) {
#pragma omp critical(diagrec_sweep_failure)
                    if (!failure) failure = std::current_exception();
                }
            }
            if (failure) std::rethrow_exception(failure);
            break;
        }
#endif
        (void)threads;
        for (std::int64_t i = 0; i < count; ++i)
            fill_line(rec, field, bases[static_cast<std::size_t>(i)], pA, pb);
        break;
    }
    }
    return field;
}

Matrix fundamental_matrix(const CoefficientProvider& A, const MultiIndex& t) {
    const std::uint64_t level = mu(t);
    Matrix phi = Matrix::identity(static_cast<std::size_t>(A.order()));
    for (std::uint64_t k = 1; k <= level; ++k)
        phi = phi * A(shift(t, -static_cast<std::int64_t>(k)));
    return phi;
}

Matrix fundamental_matrix(const DiagonalRecurrence& rec, const MultiIndex& t) {
    return fundamental_matrix(rec.A, t);
}

Vector solve_homogeneous_via_phi(const DiagonalRecurrence& rec, const MultiIndex& t) {
    if (!rec.b.is_zero())
        throw ValidationError("solve_homogeneous_via_phi requires zero forcing");
    const std::uint64_t level = mu(t);
    if (level == 0)
        return boundary_value(rec, t);
    const MultiIndex base = shift(t, -static_cast<std::int64_t>(level));
    return fundamental_matrix(rec.A, t) * boundary_value(rec, base);
}

double recurrence_residual(const SolutionField& field, const CoefficientProvider& A,
                           const ForcingProvider* b) {
    double worst = 0.0;
    MultiIndex t = field.first();
    do {
        const MultiIndex up_candidate = shift(t, 1);
        if (!field.in_window(up_candidate)) continue;
        Vector expect = A(t) * field.at(t);
        if (b) expect += (*b)(t);
        const Vector actual = field.at(up_candidate);
        const Vector diff = actual - expect;
        worst = std::max(worst, diff.inf_norm() / std::max(1.0, actual.inf_norm()));
    } while (field.next(t));
    return worst;
}

} // namespace diagrec
