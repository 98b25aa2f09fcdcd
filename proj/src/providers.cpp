#include "diagrec/providers.hpp"

#include <numeric>

namespace diagrec {

namespace {

std::size_t residue_index(const MultiIndex& t, const std::vector<int>& periods) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < periods.size(); ++i) {
        const auto p = static_cast<std::uint64_t>(periods[i]);
        idx = idx * static_cast<std::size_t>(p) +
              static_cast<std::size_t>(t[static_cast<int>(i)] % p);
    }
    return idx;
}

std::size_t check_table_shape(int m, const std::vector<int>& periods, std::size_t entry_count) {
    if (static_cast<int>(periods.size()) != m)
        throw ValidationError("table provider needs one period per axis");
    std::size_t expected = 1;
    for (int p : periods) {
        if (p < 1)
            throw ValidationError("table provider periods must be >= 1");
        expected *= static_cast<std::size_t>(p);
    }
    if (entry_count != expected)
        throw ValidationError("table provider entry count does not match the residue grid");
    return expected;
}

int lcm_of(const std::vector<int>& periods) {
    int l = 1;
    for (int p : periods) l = std::lcm(l, p);
    return l;
}

void check_dimension(int m) {
    if (m < 1)
        throw ValidationError("provider dimension must be >= 1");
}

} // namespace

CoefficientProvider CoefficientProvider::constant(int m, Matrix value) {
    check_dimension(m);
    if (!value.square() || value.rows() == 0)
        throw ValidationError("coefficient matrices must be square and non-empty");
    CoefficientProvider p;
    p.kind_ = Kind::Constant;
    p.m_ = m;
    p.n_ = static_cast<int>(value.rows());
    p.constant_ = std::move(value);
    return p;
}

CoefficientProvider CoefficientProvider::table(int m, std::vector<int> periods,
                                               std::vector<Matrix> entries) {
    check_dimension(m);
    check_table_shape(m, periods, entries.size());
    if (entries.empty())
        throw ValidationError("table provider needs at least one entry");
    const std::size_t n = entries[0].rows();
    for (const auto& e : entries)
        if (!e.square() || e.rows() != n)
            throw ValidationError("all table provider entries must be square of equal size");
    CoefficientProvider p;
    p.kind_ = Kind::Table;
    p.m_ = m;
    p.n_ = static_cast<int>(n);
    p.periods_ = std::move(periods);
    p.entries_ = std::move(entries);
    return p;
}

CoefficientProvider CoefficientProvider::callback(int m, int n,
                                                  std::function<Matrix(const MultiIndex&)> fn,
                                                  std::optional<int> declared_diagonal_period) {
    check_dimension(m);
    if (n < 1)
        throw ValidationError("provider order must be >= 1");
    if (!fn)
        throw ValidationError("callback provider needs a callable");
    CoefficientProvider p;
    p.kind_ = Kind::Callback;
    p.m_ = m;
    p.n_ = n;
    p.fn_ = std::move(fn);
    p.declared_period_ = declared_diagonal_period;
    return p;
}

Matrix CoefficientProvider::operator()(const MultiIndex& t) const {
    if (t.dimension() != m_)
        throw ValidationError("provider queried with a point of the wrong dimension");
    switch (kind_) {
    case Kind::Constant:
        return constant_;
    case Kind::Table:
        return entries_[residue_index(t, periods_)];
    case Kind::Callback:
        break;
    }
    Matrix a = fn_(t);
    if (!a.square() || static_cast<int>(a.rows()) != n_)
        throw ValidationError("callback provider returned a matrix of the wrong size");
    return a;
}

std::optional<int> CoefficientProvider::diagonal_period() const {
    switch (kind_) {
    case Kind::Constant:
        return 1;
    case Kind::Table:
        return lcm_of(periods_);
    case Kind::Callback:
        return declared_period_;
    }
    return std::nullopt;
}

ForcingProvider ForcingProvider::zero(int m, int n) {
    auto p = constant(m, Vector::zero(static_cast<std::size_t>(n)));
    p.zero_ = true;
    return p;
}

ForcingProvider ForcingProvider::constant(int m, Vector value) {
    check_dimension(m);
    if (value.size() == 0)
        throw ValidationError("forcing vectors must be non-empty");
    ForcingProvider p;
    p.kind_ = Kind::Constant;
    p.m_ = m;
    p.n_ = static_cast<int>(value.size());
    p.constant_ = std::move(value);
    return p;
}

ForcingProvider ForcingProvider::table(int m, std::vector<int> periods,
                                       std::vector<Vector> entries) {
    check_dimension(m);
    check_table_shape(m, periods, entries.size());
    if (entries.empty())
        throw ValidationError("table provider needs at least one entry");
    const std::size_t n = entries[0].size();
    for (const auto& e : entries)
        if (e.size() != n || n == 0)
            throw ValidationError("all forcing table entries must have equal nonzero size");
    ForcingProvider p;
    p.kind_ = Kind::Table;
    p.m_ = m;
    p.n_ = static_cast<int>(n);
    p.periods_ = std::move(periods);
    p.entries_ = std::move(entries);
    return p;
}

ForcingProvider ForcingProvider::callback(int m, int n, std::function<Vector(const MultiIndex&)> fn) {
    check_dimension(m);
    if (n < 1)
        throw ValidationError("provider order must be >= 1");
    if (!fn)
        throw ValidationError("callback provider needs a callable");
    ForcingProvider p;
    p.kind_ = Kind::Callback;
    p.m_ = m;
    p.n_ = n;
    p.fn_ = std::move(fn);
    return p;
}

Vector ForcingProvider::operator()(const MultiIndex& t) const {
    if (t.dimension() != m_)
        throw ValidationError("provider queried with a point of the wrong dimension");
    switch (kind_) {
    case Kind::Constant:
        return constant_;
    case Kind::Table:
        return entries_[residue_index(t, periods_)];
    case Kind::Callback:
        break;
    }
    Vector b = fn_(t);
    if (static_cast<int>(b.size()) != n_)
        throw ValidationError("callback provider returned a vector of the wrong size");
    return b;
}

} // namespace diagrec
