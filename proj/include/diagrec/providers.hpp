#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "diagrec/lattice.hpp"
#include "diagrec/matrix.hpp"

namespace diagrec {

// Coefficient function A: N^m -> M_n(C). Three shapes cover the use cases:
// a single constant matrix, a componentwise-periodic lookup table, and an
// arbitrary callback (used for diagonal-phase coefficient families).
// Providers are immutable after construction and safe to query concurrently.
class CoefficientProvider {
public:
    enum class Kind { Constant, Table, Callback };

    static CoefficientProvider constant(int m, Matrix value);
    // entries are indexed row-major by the residue tuple (t1 mod p1, ...).
    static CoefficientProvider table(int m, std::vector<int> periods, std::vector<Matrix> entries);
    static CoefficientProvider callback(int m, int n, std::function<Matrix(const MultiIndex&)> fn,
                                        std::optional<int> declared_diagonal_period = std::nullopt);

    Matrix operator()(const MultiIndex& t) const;

    Kind kind() const { return kind_; }
    int dimension() const { return m_; }
    int order() const { return n_; }

    // T such that A(t + T*1) = A(t): 1 for constants, lcm of the periods for
    // tables, the declared value (if any) for callbacks.
    std::optional<int> diagonal_period() const;

private:
    CoefficientProvider() = default;

    Kind kind_ = Kind::Constant;
    int m_ = 0, n_ = 0;
    Matrix constant_;
    std::vector<int> periods_;
    std::vector<Matrix> entries_;
    std::function<Matrix(const MultiIndex&)> fn_;
    std::optional<int> declared_period_;
};

// Forcing term b: N^m -> C^n, same shapes as CoefficientProvider.
class ForcingProvider {
public:
    enum class Kind { Constant, Table, Callback };

    static ForcingProvider zero(int m, int n);
    static ForcingProvider constant(int m, Vector value);
    static ForcingProvider table(int m, std::vector<int> periods, std::vector<Vector> entries);
    static ForcingProvider callback(int m, int n, std::function<Vector(const MultiIndex&)> fn);

    Vector operator()(const MultiIndex& t) const;

    Kind kind() const { return kind_; }
    int dimension() const { return m_; }
    int order() const { return n_; }
    bool is_zero() const { return zero_; }

private:
    ForcingProvider() = default;

    Kind kind_ = Kind::Constant;
    int m_ = 0, n_ = 0;
    bool zero_ = false;
    Vector constant_;
    std::vector<int> periods_;
    std::vector<Vector> entries_;
    std::function<Vector(const MultiIndex&)> fn_;
};

} // namespace diagrec
