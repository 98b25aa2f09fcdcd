#include "diagrec/floquet.hpp"

#include <string>

namespace diagrec {

PeriodicityCheck check_diagonal_periodicity(const CoefficientProvider& A, int T,
                                            std::span<const std::uint64_t> window) {
    if (T < 1)
        throw ValidationError("diagonal period must be >= 1");
    if (static_cast<int>(window.size()) != A.dimension())
        throw ValidationError("periodicity window must have one extent per axis");

    const double tol = A.kind() == CoefficientProvider::Kind::Callback ? 1e-12 : 0.0;
    SolutionField grid(A.dimension(), 1, std::vector<std::uint64_t>(window.begin(), window.end()));

    bool tested = false;
    MultiIndex t = grid.first();
    do {
        const MultiIndex tt = shift(t, T);
        if (!grid.in_window(tt)) continue;
        tested = true;
        if (max_abs_diff(A(t), A(tt)) > tol)
            return {false, t};
    } while (grid.next(t));
    if (!tested)
        throw ValidationError("window too small to test diagonal periodicity: needs t and t+T*1");
    return {true, std::nullopt};
}

Matrix tilde_A(const CoefficientProvider& A, int T, const MultiIndex& t) {
    if (T < 1)
        throw ValidationError("diagonal period must be >= 1");
    Matrix acc = A(shift(t, T - 1));
    for (int k = T - 2; k >= 0; --k) acc = acc * A(shift(t, k));
    return acc;
}

Matrix monodromy(const CoefficientProvider& A, int T, const MultiIndex& t) {
    return tilde_A(A, T, diag_decompose(t).base);
}

double verify_power_identity(const CoefficientProvider& A, int T, const MultiIndex& t, int k) {
    if (k < 0)
        throw ValidationError("power identity check needs k >= 0");
    const Matrix lhs = fundamental_matrix(A, shift(t, static_cast<std::int64_t>(k) * T));
    const Matrix rhs = fundamental_matrix(A, t) * matrix_power(monodromy(A, T, t), k);
    return relative_residual(lhs, rhs);
}

FloquetDecomposition::FloquetDecomposition(CoefficientProvider A, int T)
    : A_(std::move(A)), T_(T) {
    if (T_ < 1)
        throw ValidationError("diagonal period must be >= 1");
    // A family with diagonal period p is also T-periodic exactly when p | T.
    const auto declared = A_.diagonal_period();
    if (declared && T_ % *declared != 0)
        throw ValidationError("requested period " + std::to_string(T_) +
                              " is not a multiple of the provider period " +
                              std::to_string(*declared));
}

const FloquetDecomposition::Record& FloquetDecomposition::record_at(const MultiIndex& t) const {
    const MultiIndex base = diag_decompose(t).base;
    std::vector<std::uint64_t> key(base.components().begin(), base.components().end());
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        Record rec;
        rec.d = tilde_A(A_, T_, base);
        rec.b = matrix_root(rec.d, T_);
        rec.b_inv = inverse(rec.b);
        rec.mult = eigenvalues(rec.d);
        it = cache_.emplace(std::move(key), std::move(rec)).first;
    }
    return it->second;
}

const Matrix& FloquetDecomposition::monodromy(const MultiIndex& t) const {
    return record_at(t).d;
}

const Matrix& FloquetDecomposition::root(const MultiIndex& t) const {
    return record_at(t).b;
}

const Spectrum& FloquetDecomposition::multipliers(const MultiIndex& t) const {
    return record_at(t).mult;
}

Matrix FloquetDecomposition::periodic_factor(const MultiIndex& t) const {
    const Record& rec = record_at(t);
    const auto level = static_cast<std::int64_t>(mu(t));
    return fundamental_matrix(A_, t) * matrix_power(rec.b_inv, level);
}

Matrix floquet_B(const CoefficientProvider& A, int T, const MultiIndex& t) {
    return FloquetDecomposition(A, T).root(t);
}

Matrix floquet_P(const CoefficientProvider& A, int T, const MultiIndex& t) {
    return FloquetDecomposition(A, T).periodic_factor(t);
}

Spectrum floquet_multipliers(const CoefficientProvider& A, int T, const MultiIndex& t) {
    return FloquetDecomposition(A, T).multipliers(t);
}

SolutionField transport_solution(const CoefficientProvider& A, int T, const SolutionField& input,
                                 TransportDirection direction, double tol) {
    if (input.dimension() != A.dimension() || input.order() != A.order())
        throw ValidationError("transport input field shape does not match the coefficients");

    FloquetDecomposition dec(A, T);
    const CoefficientProvider B = CoefficientProvider::callback(
        A.dimension(), A.order(), [&dec](const MultiIndex& t) { return dec.root(t); }, T);

    // Contract: the input must actually solve its own system.
    const CoefficientProvider& expected =
        direction == TransportDirection::Forward ? B : A;
    const double residual = recurrence_residual(input, expected);
    if (residual > tol)
        throw ValidationError("transport input does not solve its recurrence: residual " +
                              std::to_string(residual));

    SolutionField out(input.dimension(), input.order(),
                      std::vector<std::uint64_t>(input.window().begin(), input.window().end()));
    MultiIndex t = out.first();
    do {
        const Matrix p = dec.periodic_factor(t);
        if (direction == TransportDirection::Forward)
            out.set(t, p * input.at(t));
        else
            out.set(t, inverse(p) * input.at(t));
    } while (out.next(t));
    return out;
}

} // namespace diagrec
