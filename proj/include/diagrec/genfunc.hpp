#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "diagrec/errors.hpp"
#include "diagrec/rational.hpp"

// Bivariate generating functions for the second-order diagonal recurrence
// Y(t+2*1) = (gamma+alpha) Y(t+1*1) - alpha Y(t) with boundary rows/columns
// 0 and 1. Everything is templated over the coefficient scalar: double for
// ordinary numerics, Rational for exact identities (the two generating
// function variants and the two expansion routes agree exactly over
// Rational; over double they are cross-checked at 1e-12).

namespace diagrec {

inline double scalar_to_double(double v) { return v; }
inline double scalar_to_double(const Rational& v) { return rational_to_double(v); }

template <class S>
inline constexpr bool kExactScalar = std::is_same_v<S, Rational>;

// Sparse bivariate polynomial in x, y with unique, zero-pruned terms.
template <class S>
class BivariatePoly {
public:
    using TermMap = std::map<std::pair<int, int>, S>;

    BivariatePoly() = default;
    explicit BivariatePoly(S constant) { add_term(0, 0, std::move(constant)); }

    void add_term(int m, int n, S coeff) {
        if (m < 0 || n < 0)
            throw ValidationError("polynomial exponents must be nonnegative");
        if (coeff == S{}) return;
        auto [it, inserted] = terms_.try_emplace({m, n}, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == S{}) terms_.erase(it);
        }
    }

    S coefficient(int m, int n) const {
        auto it = terms_.find({m, n});
        return it == terms_.end() ? S{} : it->second;
    }

    bool empty() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    int max_degree_x() const {
        int d = 0;
        for (const auto& [mn, c] : terms_) d = std::max(d, mn.first);
        return d;
    }
    int max_degree_y() const {
        int d = 0;
        for (const auto& [mn, c] : terms_) d = std::max(d, mn.second);
        return d;
    }

    BivariatePoly& operator+=(const BivariatePoly& o) {
        for (const auto& [mn, c] : o.terms_) add_term(mn.first, mn.second, c);
        return *this;
    }
    BivariatePoly& operator-=(const BivariatePoly& o) {
        for (const auto& [mn, c] : o.terms_) add_term(mn.first, mn.second, S{} - c);
        return *this;
    }

    friend BivariatePoly operator+(BivariatePoly a, const BivariatePoly& b) { return a += b; }
    friend BivariatePoly operator-(BivariatePoly a, const BivariatePoly& b) { return a -= b; }

    friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
        BivariatePoly out;
        for (const auto& [mna, ca] : a.terms_)
            for (const auto& [mnb, cb] : b.terms_)
                out.add_term(mna.first + mnb.first, mna.second + mnb.second, ca * cb);
        return out;
    }

    // this += scale * x^dm y^dn * p
    void add_scaled_shifted(const BivariatePoly& p, int dm, int dn, const S& scale) {
        for (const auto& [mn, c] : p.terms_)
            add_term(mn.first + dm, mn.second + dn, scale * c);
    }

    bool operator==(const BivariatePoly&) const = default;

    // Stable term order for printing: graded by total degree, then by the
    // x exponent.
    std::vector<std::tuple<int, int, S>> grlex_terms() const {
        std::vector<std::tuple<int, int, S>> out;
        out.reserve(terms_.size());
        for (const auto& [mn, c] : terms_) out.emplace_back(mn.first, mn.second, c);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            const int da = std::get<0>(a) + std::get<1>(a);
            const int db = std::get<0>(b) + std::get<1>(b);
            if (da != db) return da < db;
            return std::get<0>(a) < std::get<0>(b);
        });
        return out;
    }

private:
    TermMap terms_;
};

// Dense truncated power series on the grid 0..M x 0..N (inclusive).
template <class S>
class BivariateSeries {
public:
    BivariateSeries(int truncation_x, int truncation_y)
        : mx_(truncation_x), ny_(truncation_y) {
        if (mx_ < 0 || ny_ < 0)
            throw ValidationError("series truncation orders must be nonnegative");
        c_.assign(static_cast<std::size_t>(mx_ + 1) * static_cast<std::size_t>(ny_ + 1), S{});
    }

    static BivariateSeries from_poly(const BivariatePoly<S>& p, int truncation_x,
                                     int truncation_y) {
        BivariateSeries s(truncation_x, truncation_y);
        for (const auto& [mn, coeff] : p.terms())
            if (mn.first <= truncation_x && mn.second <= truncation_y)
                s.at(mn.first, mn.second) = coeff;
        return s;
    }

    int truncation_x() const { return mx_; }
    int truncation_y() const { return ny_; }

    S& at(int m, int n) { return c_[index(m, n)]; }
    const S& at(int m, int n) const { return c_[index(m, n)]; }

    bool all_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const S& v) { return v == S{}; });
    }

    BivariateSeries& operator+=(const BivariateSeries& o) {
        require_same_grid(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    BivariateSeries& operator-=(const BivariateSeries& o) {
        require_same_grid(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }

    friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) { return a += b; }
    friend BivariateSeries operator-(BivariateSeries a, const BivariateSeries& b) { return a -= b; }

    friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
        a.require_same_grid(b);
        BivariateSeries out(a.mx_, a.ny_);
        for (int m = 0; m <= a.mx_; ++m)
            for (int n = 0; n <= a.ny_; ++n) {
                const S& av = a.at(m, n);
                if (av == S{}) continue;
                for (int i = 0; m + i <= a.mx_; ++i)
                    for (int j = 0; n + j <= a.ny_; ++j) {
                        const S& bv = b.at(i, j);
                        if (bv == S{}) continue;
                        out.at(m + i, n + j) += av * bv;
                    }
            }
        return out;
    }

    // Cauchy division: solves q * f = g for f cell by cell; q(0,0) must be
    // nonzero.
    friend BivariateSeries divide(const BivariateSeries& g, const BivariateSeries& q) {
        g.require_same_grid(q);
        if (q.at(0, 0) == S{})
            throw ValidationError("series division by a series with zero constant term");
        BivariateSeries f(g.mx_, g.ny_);
        for (int m = 0; m <= g.mx_; ++m)
            for (int n = 0; n <= g.ny_; ++n) {
                S acc = g.at(m, n);
                for (int i = 0; i <= m; ++i)
                    for (int j = 0; j <= n; ++j) {
                        if (i == 0 && j == 0) continue;
                        const S& qv = q.at(i, j);
                        if (qv == S{}) continue;
                        acc -= qv * f.at(m - i, n - j);
                    }
                f.at(m, n) = acc / q.at(0, 0);
            }
        return f;
    }

    bool operator==(const BivariateSeries&) const = default;

private:
    std::size_t index(int m, int n) const {
        if (m < 0 || m > mx_ || n < 0 || n > ny_)
            throw ValidationError("series index outside the truncation grid");
        return static_cast<std::size_t>(m) * static_cast<std::size_t>(ny_ + 1) +
               static_cast<std::size_t>(n);
    }
    void require_same_grid(const BivariateSeries& o) const {
        if (mx_ != o.mx_ || ny_ != o.ny_)
            throw ValidationError("series truncation grids differ");
    }

    int mx_, ny_;
    std::vector<S> c_;
};

template <class S>
BivariateSeries<double> to_double_series(const BivariateSeries<S>& s) {
    BivariateSeries<double> out(s.truncation_x(), s.truncation_y());
    for (int m = 0; m <= s.truncation_x(); ++m)
        for (int n = 0; n <= s.truncation_y(); ++n)
            out.at(m, n) = scalar_to_double(s.at(m, n));
    return out;
}

// Boundary rows/columns of the Y grid: phi0[m] = Y_{m,0}, psi0[n] = Y_{0,n},
// phi1[m] = Y_{m,1} (m >= 1, slot 0 forced zero), psi1[n] = Y_{1,n} (n >= 1,
// slot 0 forced zero). Values beyond the stored length are zero.
template <class S>
struct BoundaryLayers {
    std::vector<S> phi0, psi0, phi1, psi1;
    S y00{}, y11{};

    S at_phi0(int m) const { return fetch(phi0, m); }
    S at_psi0(int n) const { return fetch(psi0, n); }
    S at_phi1(int m) const { return fetch(phi1, m); }
    S at_psi1(int n) const { return fetch(psi1, n); }

    // Y value at a grid point that the layers cover, zero elsewhere on
    // rows/columns 0 and 1.
    S corner_value(int m, int n) const {
        if (n == 0) return at_phi0(m);
        if (m == 0) return at_psi0(n);
        if (n == 1) return at_phi1(m);
        if (m == 1) return at_psi1(n);
        throw ValidationError("layer lookup away from rows/columns 0 and 1");
    }

    void validate() const {
        if (at_phi0(0) != y00 || at_psi0(0) != y00)
            throw ValidationError("corner inconsistency: phi0[0], psi0[0] and Y00 must agree");
        if (at_phi1(0) != S{} || at_psi1(0) != S{})
            throw ValidationError("corner inconsistency: phi1 and psi1 have no constant term");
        if (at_phi1(1) != y11 || at_psi1(1) != y11)
            throw ValidationError("corner inconsistency: phi1[1], psi1[1] and Y11 must agree");
    }

private:
    static S fetch(const std::vector<S>& v, int i) {
        return i >= 0 && static_cast<std::size_t>(i) < v.size()
                   ? v[static_cast<std::size_t>(i)]
                   : S{};
    }
};

template <class S>
struct RationalGF {
    BivariatePoly<S> numerator;    // G
    BivariatePoly<S> denominator;  // Q, constant term 1
};

template <class S>
BivariatePoly<S> hicks_denominator(const S& gamma, const S& alpha) {
    BivariatePoly<S> q(S(1));
    q.add_term(1, 1, S{} - (gamma + alpha));
    q.add_term(2, 2, alpha);
    return q;
}

namespace genfunc_detail {

template <class S>
void validate_hicks_scalars(const S& gamma, const S& alpha) {
    if (!(gamma > S{} && gamma < S(1)))
        throw ValidationError("gamma out of (0,1)");
    if (!(alpha > S{}))
        throw ValidationError("alpha must be positive");
}

// phi0(x) + psi0(y) - Y00, shared by both variants' bookkeeping.
template <class S>
BivariatePoly<S> corner_sum(const BoundaryLayers<S>& layers) {
    BivariatePoly<S> s;
    for (std::size_t m = 0; m < layers.phi0.size(); ++m)
        s.add_term(static_cast<int>(m), 0, layers.phi0[m]);
    for (std::size_t n = 0; n < layers.psi0.size(); ++n)
        s.add_term(0, static_cast<int>(n), layers.psi0[n]);
    s.add_term(0, 0, S{} - layers.y00);
    return s;
}

} // namespace genfunc_detail

// Variant 1: G = (1 - (gamma+alpha) xy)(phi0 + psi0 - Y00) + y phi1(x)
// + x psi1(y) - Y11 xy, over Q = 1 - (gamma+alpha) xy + alpha x^2 y^2.
template <class S>
RationalGF<S> build_gf_variant1(const S& gamma, const S& alpha,
                                const BoundaryLayers<S>& layers) {
    genfunc_detail::validate_hicks_scalars(gamma, alpha);
    layers.validate();
    const S c = gamma + alpha;

    const BivariatePoly<S> s = genfunc_detail::corner_sum(layers);
    BivariatePoly<S> g = s;
    g.add_scaled_shifted(s, 1, 1, S{} - c);
    for (std::size_t m = 1; m < layers.phi1.size(); ++m)
        g.add_term(static_cast<int>(m), 1, layers.phi1[m]);
    for (std::size_t n = 1; n < layers.psi1.size(); ++n)
        g.add_term(1, static_cast<int>(n), layers.psi1[n]);
    g.add_term(1, 1, S{} - layers.y11);

    return {std::move(g), hicks_denominator(gamma, alpha)};
}

// Variant 2: the same numerator assembled layer term by layer term,
// G = sum_k [Y_{0k} + (Y_{1,k+1} - (gamma+alpha) Y_{0k}) xy] y^k
//   + sum_{k>=1} [Y_{k0} + (Y_{k+1,1} - (gamma+alpha) Y_{k0}) xy] x^k.
template <class S>
RationalGF<S> build_gf_variant2(const S& gamma, const S& alpha,
                                const BoundaryLayers<S>& layers) {
    genfunc_detail::validate_hicks_scalars(gamma, alpha);
    layers.validate();
    const S c = gamma + alpha;

    BivariatePoly<S> g;
    const int col_span = std::max(static_cast<int>(layers.psi0.size()),
                                  static_cast<int>(layers.psi1.size()) - 1);
    for (int k = 0; k < col_span; ++k) {
        g.add_term(0, k, layers.at_psi0(k));
        g.add_term(1, k + 1, layers.at_psi1(k + 1) - c * layers.at_psi0(k));
    }
    const int row_span = std::max(static_cast<int>(layers.phi0.size()),
                                  static_cast<int>(layers.phi1.size()) - 1);
    for (int k = 1; k < row_span; ++k) {
        g.add_term(k, 0, layers.at_phi0(k));
        g.add_term(k + 1, 1, layers.at_phi1(k + 1) - c * layers.at_phi0(k));
    }

    return {std::move(g), hicks_denominator(gamma, alpha)};
}

template <class S>
struct UnivariateGF {
    std::vector<S> numerator;
    std::vector<S> denominator;  // constant term 1
};

// Diagonal/univariate specialization F(x) = (a0 + (a1 - (alpha+gamma) a0) x)
// / (1 - (alpha+gamma) x + alpha x^2).
template <class S>
UnivariateGF<S> build_gf_univariate(const S& gamma, const S& alpha, const S& a0, const S& a1) {
    genfunc_detail::validate_hicks_scalars(gamma, alpha);
    const S c = gamma + alpha;
    return {{a0, a1 - c * a0}, {S(1), S{} - c, alpha}};
}

template <class S>
std::vector<S> expand_univariate(const UnivariateGF<S>& gf, int order) {
    if (order < 0)
        throw ValidationError("expansion order must be nonnegative");
    if (gf.denominator.empty() || gf.denominator[0] == S{})
        throw ValidationError("univariate division by a zero constant term");
    std::vector<S> f(static_cast<std::size_t>(order) + 1, S{});
    for (std::size_t k = 0; k < f.size(); ++k) {
        S acc = k < gf.numerator.size() ? gf.numerator[k] : S{};
        for (std::size_t j = 1; j < gf.denominator.size() && j <= k; ++j)
            acc -= gf.denominator[j] * f[k - j];
        f[k] = acc / gf.denominator[0];
    }
    return f;
}

// Route 1: direct Cauchy division of the truncated series.
template <class S>
BivariateSeries<S> expand_by_division(const RationalGF<S>& gf, int truncation_x,
                                      int truncation_y) {
    const auto g = BivariateSeries<S>::from_poly(gf.numerator, truncation_x, truncation_y);
    const auto q = BivariateSeries<S>::from_poly(gf.denominator, truncation_x, truncation_y);
    return divide(g, q);
}

// Route 2: the geometric identity 1/Q = sum_k (1 - Q)^k, which for the Hicks
// denominator is the xy-expansion sum_k ((gamma+alpha) - alpha xy)^k x^k y^k.
template <class S>
BivariateSeries<S> expand_by_geometric(const RationalGF<S>& gf, int truncation_x,
                                       int truncation_y) {
    if (gf.denominator.coefficient(0, 0) != S(1))
        throw ValidationError("geometric expansion needs a denominator with constant term 1");
    BivariatePoly<S> r(S(1));
    r -= gf.denominator;  // no constant term left

    const auto r_series = BivariateSeries<S>::from_poly(r, truncation_x, truncation_y);
    BivariateSeries<S> powk(truncation_x, truncation_y);
    powk.at(0, 0) = S(1);
    BivariateSeries<S> acc = powk;
    const int step_budget = truncation_x + truncation_y;
    for (int k = 1; k <= step_budget; ++k) {
        powk = powk * r_series;
        if (powk.all_zero()) break;
        acc += powk;
    }
    return acc * BivariateSeries<S>::from_poly(gf.numerator, truncation_x, truncation_y);
}

// Both routes, cross-checked cell by cell: exact equality over Rational,
// 1e-12 relative over double. Truncation beyond the cap is refused.
template <class S>
BivariateSeries<S> expand(const RationalGF<S>& gf, int truncation_x, int truncation_y,
                          int cap = 64) {
    if (truncation_x < 0 || truncation_y < 0)
        throw ValidationError("expansion orders must be nonnegative");
    if (truncation_x > cap || truncation_y > cap)
        throw ValidationError("expansion order exceeds the cap of " + std::to_string(cap));
    const auto by_division = expand_by_division(gf, truncation_x, truncation_y);
    const auto by_geometric = expand_by_geometric(gf, truncation_x, truncation_y);
    for (int m = 0; m <= truncation_x; ++m)
        for (int n = 0; n <= truncation_y; ++n) {
            if constexpr (kExactScalar<S>) {
                if (by_division.at(m, n) != by_geometric.at(m, n))
                    throw NumericError("expansion routes disagree at (" + std::to_string(m) +
                                       "," + std::to_string(n) + ")");
            } else {
                const double a = scalar_to_double(by_division.at(m, n));
                const double b = scalar_to_double(by_geometric.at(m, n));
                if (std::abs(a - b) > 1e-12 * std::max(1.0, std::max(std::abs(a), std::abs(b))))
                    throw NumericError("expansion routes disagree at (" + std::to_string(m) +
                                       "," + std::to_string(n) + ")");
            }
        }
    return by_division;
}

struct FunctionalEquationResiduals {
    double series_defect;    // max |Q*F - G| on the grid
    double kernel_identity;  // max |K - (Q*F + U)| on the grid
};

// K and U are the kernel-method bookkeeping polynomials
// K = -(gamma+alpha) xy (phi0+psi0-Y00) - Y11 xy and
// U = -(y phi1 + x psi1 + (phi0+psi0-Y00)), so G = K - U and a correct
// expansion leaves both residuals at zero.
template <class S>
FunctionalEquationResiduals verify_functional_equation(const S& gamma, const S& alpha,
                                                       const BoundaryLayers<S>& layers,
                                                       const RationalGF<S>& gf,
                                                       const BivariateSeries<S>& series) {
    layers.validate();
    const int mx = series.truncation_x();
    const int ny = series.truncation_y();
    const S c = gamma + alpha;

    const auto qf = BivariateSeries<S>::from_poly(gf.denominator, mx, ny) * series;
    const auto g = BivariateSeries<S>::from_poly(gf.numerator, mx, ny);

    const BivariatePoly<S> s = genfunc_detail::corner_sum(layers);
    BivariatePoly<S> k_poly;
    k_poly.add_scaled_shifted(s, 1, 1, S{} - c);
    k_poly.add_term(1, 1, S{} - layers.y11);
    BivariatePoly<S> u_poly;
    u_poly -= s;
    for (std::size_t m = 1; m < layers.phi1.size(); ++m)
        u_poly.add_term(static_cast<int>(m), 1, S{} - layers.phi1[m]);
    for (std::size_t n = 1; n < layers.psi1.size(); ++n)
        u_poly.add_term(1, static_cast<int>(n), S{} - layers.psi1[n]);

    const auto k_series = BivariateSeries<S>::from_poly(k_poly, mx, ny);
    const auto u_series = BivariateSeries<S>::from_poly(u_poly, mx, ny);

    FunctionalEquationResiduals out{0.0, 0.0};
    for (int m = 0; m <= mx; ++m)
        for (int n = 0; n <= ny; ++n) {
            out.series_defect = std::max(
                out.series_defect, std::abs(scalar_to_double(qf.at(m, n) - g.at(m, n))));
            out.kernel_identity = std::max(
                out.kernel_identity,
                std::abs(scalar_to_double(k_series.at(m, n) - (qf.at(m, n) + u_series.at(m, n)))));
        }
    return out;
}

// Diagonal sequence of the particular-type solution with data Y00, Y11:
// Y_nn = (A / r1^(n+1) + B / r2^(n+1)) / alpha with r1 < r2 the real roots
// of 1 - (gamma+alpha) s + alpha s^2 and A, B the partial-fraction residues
// of the univariate numerator N(s) = Y00 + (Y11 - (gamma+alpha) Y00) s:
// A = N(r1)/(r2 - r1), B = N(r2)/(r1 - r2). Requires (gamma+alpha)^2 > 4 alpha.
struct DiagonalClosedForm {
    double r1 = 0.0, r2 = 0.0;
    double a = 0.0, b = 0.0;
    double alpha = 0.0;
    bool valid = false;

    double value(int n) const {
        if (!valid)
            throw ValidationError("diagonal closed form needs real distinct denominator roots");
        return (a / std::pow(r1, n + 1) + b / std::pow(r2, n + 1)) / alpha;
    }
};

inline DiagonalClosedForm diagonal_closed_form(double gamma, double alpha, double y00,
                                               double y11) {
    if (!(gamma > 0.0 && gamma < 1.0) || !(alpha > 0.0))
        throw ValidationError("diagonal closed form needs gamma in (0,1) and alpha > 0");
    DiagonalClosedForm out;
    out.alpha = alpha;
    const double c = gamma + alpha;
    const double disc = c * c - 4.0 * alpha;
    if (disc <= 0.0) {
        out.valid = false;
        return out;
    }
    const double sq = std::sqrt(disc);
    out.r1 = (c - sq) / (2.0 * alpha);
    out.r2 = (c + sq) / (2.0 * alpha);
    const auto numerator_at = [&](double s) { return y00 + (y11 - c * y00) * s; };
    out.a = numerator_at(out.r1) / (out.r2 - out.r1);
    out.b = numerator_at(out.r2) / (out.r1 - out.r2);
    out.valid = true;
    return out;
}

} // namespace diagrec
