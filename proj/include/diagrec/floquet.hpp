#pragma once

#include <map>
#include <optional>
#include <span>

#include "diagrec/eigen.hpp"
#include "diagrec/providers.hpp"
#include "diagrec/recurrence.hpp"

namespace diagrec {

struct PeriodicityCheck {
    bool periodic = false;
    std::optional<MultiIndex> counterexample;
};

// Does A(t + T*1) = A(t) hold for every t in the window with t + T*1 also in
// the window? Exact comparison for constant and table providers, 1e-12
// max-entry tolerance for callbacks. A window without any testable pair is a
// ValidationError.
PeriodicityCheck check_diagonal_periodicity(const CoefficientProvider& A, int T,
                                            std::span<const std::uint64_t> window);

// Ordered one-period product A(t + (T-1)*1) ... A(t + 1) A(t).
Matrix tilde_A(const CoefficientProvider& A, int T, const MultiIndex& t);

// Monodromy D(t) = tilde_A at the diagonal base of t; constant along each
// diagonal by construction.
Matrix monodromy(const CoefficientProvider& A, int T, const MultiIndex& t);

// Relative Frobenius residual of Phi(t + k*T*1) against Phi(t) D(t)^k, both
// sides evaluated independently (full chain product vs. cached power).
double verify_power_identity(const CoefficientProvider& A, int T, const MultiIndex& t, int k);

// Per-diagonal Floquet data for a T-diagonal-periodic coefficient family:
// D(t), its principal T-th root B(t), the multipliers, and the periodic
// factor P(t) = Phi(t) B(t)^(-mu(t)). Records are cached per diagonal base;
// the cache is grown lazily, so build access is single-threaded.
class FloquetDecomposition {
public:
    FloquetDecomposition(CoefficientProvider A, int T);

    int period() const { return T_; }
    const CoefficientProvider& coefficients() const { return A_; }

    const Matrix& monodromy(const MultiIndex& t) const;
    const Matrix& root(const MultiIndex& t) const;           // B(t), B^T = D
    const Spectrum& multipliers(const MultiIndex& t) const;  // eigenvalues of D(t)
    Matrix periodic_factor(const MultiIndex& t) const;       // P(t)

private:
    struct Record {
        Matrix d, b, b_inv;
        Spectrum mult;
    };

    const Record& record_at(const MultiIndex& t) const;

    CoefficientProvider A_;
    int T_;
    mutable std::map<std::vector<std::uint64_t>, Record> cache_;
};

Matrix floquet_B(const CoefficientProvider& A, int T, const MultiIndex& t);
Matrix floquet_P(const CoefficientProvider& A, int T, const MultiIndex& t);
Spectrum floquet_multipliers(const CoefficientProvider& A, int T, const MultiIndex& t);

enum class TransportDirection {
    Forward,  // x(t) = P(t) y(t): y solves the B-system, x solves the A-system
    Inverse,  // y(t) = P(t)^(-1) x(t)
};

// Pointwise change of variables between the A-system and its diagonally
// constant B-system. The input field must satisfy its own recurrence within
// `tol` (contract check), otherwise a ValidationError names the residual.
SolutionField transport_solution(const CoefficientProvider& A, int T, const SolutionField& input,
                                 TransportDirection direction, double tol = 1e-8);

} // namespace diagrec
