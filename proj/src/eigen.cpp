#include "diagrec/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace diagrec {

namespace {

constexpr int kMaxEigenSize = 8;
constexpr int kDkMaxIterations = 500;
constexpr double kDkStepTolerance = 1e-13;

bool complex_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

Complex horner(std::span<const Complex> tail, Complex z) {
    Complex p = 1.0;  // monic leading coefficient
    for (const auto& a : tail) p = p * z + a;
    return p;
}

// Value of the order-th derivative of the monic polynomial at z.
Complex derivative_value(std::span<const Complex> tail, int order, Complex z) {
    std::vector<Complex> c;
    c.reserve(tail.size() + 1);
    c.push_back(1.0);
    c.insert(c.end(), tail.begin(), tail.end());
    for (int d = 0; d < order; ++d) {
        const std::size_t deg = c.size() - 1;
        if (deg == 0) return Complex{};
        std::vector<Complex> next(deg);
        for (std::size_t i = 0; i < deg; ++i)
            next[i] = c[i] * static_cast<double>(deg - i);
        c = std::move(next);
    }
    Complex p = 0.0;
    for (const auto& a : c) p = p * z + a;
    return p;
}

// A root of multiplicity q of p is a simple root of p^(q-1), so Newton on
// that derivative recovers the accuracy the multiplicity smear destroyed.
Complex polish_multiple_root(std::span<const Complex> tail, int multiplicity, Complex z) {
    for (int it = 0; it < 40; ++it) {
        const Complex fp = derivative_value(tail, multiplicity, z);
        if (fp == Complex{}) break;
        const Complex step = derivative_value(tail, multiplicity - 1, z) / fp;
        z -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

} // namespace

std::vector<Complex> Spectrum::flattened() const {
    std::vector<Complex> all;
    for (const auto& e : distinct)
        all.insert(all.end(), static_cast<std::size_t>(e.multiplicity), e.value);
    std::sort(all.begin(), all.end(), complex_less);
    return all;
}

std::vector<Complex> characteristic_polynomial(const Matrix& m) {
    if (!m.square())
        throw ValidationError("characteristic polynomial of a non-square matrix");
    const std::size_t n = m.rows();
    std::vector<Complex> coeffs(n);
    Matrix b = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        b = m * b;
        const Complex a = -b.trace() / static_cast<double>(k);
        coeffs[k - 1] = a;
        for (std::size_t i = 0; i < n; ++i) b.at(i, i) += a;
    }
    return coeffs;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> monic_tail) {
    const std::size_t n = monic_tail.size();
    if (n == 0) return {};
    if (n == 1) return {-monic_tail[0]};

    double coeff_max = 0.0;
    for (const auto& a : monic_tail) coeff_max = std::max(coeff_max, std::abs(a));
    const double radius = 1.0 + coeff_max;

    // Fixed seed: identical inputs give identical roots run to run.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);

    std::vector<Complex> z(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) /
                                 static_cast<double>(n) +
                             0.39 + jitter(rng);
        z[j] = std::polar(radius * (0.5 + 0.1 * jitter(rng)), angle);
    }

    for (int iter = 0; iter < kDkMaxIterations; ++iter) {
        double max_step = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            Complex denom = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                Complex d = z[j] - z[k];
                if (std::abs(d) < 1e-300) d = Complex(1e-300, 1e-300);
                denom *= d;
            }
            const Complex step = horner(monic_tail, z[j]) / denom;
            z[j] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[j])));
        }
        if (max_step < kDkStepTolerance) break;
    }

    std::sort(z.begin(), z.end(), complex_less);
    return z;
}

int matrix_rank(const Matrix& m, double threshold) {
    Matrix u = m;
    const std::size_t rows = u.rows(), cols = u.cols();
    const std::size_t steps = std::min(rows, cols);
    int rank = 0;
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pr = k, pc = k;
        double best = 0.0;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                const double mag = std::abs(u.at(i, j));
                if (mag > best) { best = mag; pr = i; pc = j; }
            }
        if (best <= threshold) break;
        for (std::size_t j = 0; j < cols; ++j) std::swap(u.at(k, j), u.at(pr, j));
        for (std::size_t i = 0; i < rows; ++i) std::swap(u.at(i, k), u.at(i, pc));
        ++rank;
        for (std::size_t i = k + 1; i < rows; ++i) {
            const Complex f = u.at(i, k) / u.at(k, k);
            if (f == Complex{}) continue;
            for (std::size_t j = k; j < cols; ++j) u.at(i, j) -= f * u.at(k, j);
        }
    }
    return rank;
}

std::vector<Vector> null_space(const Matrix& m, double threshold) {
    Matrix u = m;
    const std::size_t rows = u.rows(), cols = u.cols();
    std::vector<std::size_t> colperm(cols);
    for (std::size_t j = 0; j < cols; ++j) colperm[j] = j;

    std::size_t rank = 0;
    for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
        std::size_t pr = k, pc = k;
        double best = 0.0;
        for (std::size_t i = k; i < rows; ++i)
            for (std::size_t j = k; j < cols; ++j) {
                const double mag = std::abs(u.at(i, j));
                if (mag > best) { best = mag; pr = i; pc = j; }
            }
        if (best <= threshold) break;
        for (std::size_t j = 0; j < cols; ++j) std::swap(u.at(k, j), u.at(pr, j));
        if (pc != k) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(u.at(i, k), u.at(i, pc));
            std::swap(colperm[k], colperm[pc]);
        }
        ++rank;
        for (std::size_t i = k + 1; i < rows; ++i) {
            const Complex f = u.at(i, k) / u.at(k, k);
            if (f == Complex{}) continue;
            for (std::size_t j = k; j < cols; ++j) u.at(i, j) -= f * u.at(k, j);
        }
    }

    std::vector<Vector> basis;
    for (std::size_t free_col = rank; free_col < cols; ++free_col) {
        // Back-substitute U[0..rank)[0..rank) y = -U[0..rank)[free_col].
        std::vector<Complex> y(rank);
        for (std::size_t ii = rank; ii-- > 0;) {
            Complex s = -u.at(ii, free_col);
            for (std::size_t j = ii + 1; j < rank; ++j) s -= u.at(ii, j) * y[j];
            y[ii] = s / u.at(ii, ii);
        }
        Vector x(cols);
        for (std::size_t j = 0; j < rank; ++j) x[colperm[j]] = y[j];
        x[colperm[free_col]] = 1.0;
        basis.push_back(std::move(x));
    }
    return basis;
}

Spectrum eigenvalues(const Matrix& m) {
    if (!m.square())
        throw ValidationError("eigenvalues of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0 || n > kMaxEigenSize)
        throw ValidationError("eigenvalues supported for 1 <= n <= 8, got n=" + std::to_string(n));

    const auto tail = characteristic_polynomial(m);
    auto roots = polynomial_roots(tail);

    double root_scale = 1.0;
    for (const auto& r : roots) root_scale = std::max(root_scale, std::abs(r));
    // Durand-Kerner smears a root of multiplicity q over a disc of radius
    // about eps^(1/q); 5e-5 covers q <= 3. Eigenvalues separated by less
    // than this are reported as one cluster.
    const double cluster_tol = 5e-5 * root_scale;

    Spectrum spec;
    std::size_t i = 0;
    while (i < roots.size()) {
        std::size_t j = i + 1;
        Complex sum = roots[i];
        while (j < roots.size() && std::abs(roots[j] - roots[j - 1]) <= cluster_tol) {
            sum += roots[j];
            ++j;
        }
        const auto count = static_cast<int>(j - i);
        Complex value = sum / static_cast<double>(count);
        if (count > 1) {
            const Complex polished = polish_multiple_root(tail, count, value);
            // Keep the polish only while it stays inside the cluster; a
            // cluster of genuinely distinct roots would send it wandering.
            if (std::abs(polished - value) <= cluster_tol) value = polished;
        }
        spec.distinct.push_back({value, count});
        i = j;
    }
    std::sort(spec.distinct.begin(), spec.distinct.end(),
              [](const EigenPair& a, const EigenPair& b) { return complex_less(a.value, b.value); });

    const double rank_tol = 1e-7 * std::max(1.0, max_abs(m));
    for (const auto& e : spec.distinct) {
        Matrix shifted = m;
        for (std::size_t d = 0; d < n; ++d) shifted.at(d, d) -= e.value;
        const int geometric = static_cast<int>(n) - matrix_rank(shifted, rank_tol);
        if (geometric != e.multiplicity) {
            spec.diagonalizable = false;
            break;
        }
    }
    return spec;
}

Matrix matrix_root(const Matrix& m, int T) {
    if (!m.square())
        throw ValidationError("matrix root of a non-square matrix");
    if (T < 1)
        throw ValidationError("matrix root order must be >= 1");
    if (T == 1) return m;

    const std::size_t n = m.rows();
    const auto spec = eigenvalues(m);

    double eig_scale = 1.0;
    for (const auto& e : spec.distinct) eig_scale = std::max(eig_scale, std::abs(e.value));
    for (const auto& e : spec.distinct)
        if (std::abs(e.value) <= 1e-12 * eig_scale)
            throw SingularMatrixError("matrix root of a singular matrix", std::abs(e.value));

    const double rank_tol = 1e-7 * std::max(1.0, max_abs(m));
    Matrix v(n, n);
    std::vector<Complex> column_eigenvalue(n);
    std::size_t col = 0;
    for (const auto& e : spec.distinct) {
        Matrix shifted = m;
        for (std::size_t d = 0; d < n; ++d) shifted.at(d, d) -= e.value;
        const auto basis = null_space(shifted, rank_tol);
        if (static_cast<int>(basis.size()) != e.multiplicity)
            throw DefectiveMatrixError(
                "matrix root requires a diagonalizable matrix; eigenvalue with algebraic "
                "multiplicity " + std::to_string(e.multiplicity) + " has eigenspace dimension " +
                std::to_string(basis.size()));
        for (const auto& vec : basis) {
            for (std::size_t r = 0; r < n; ++r) v.at(r, col) = vec[r];
            column_eigenvalue[col] = e.value;
            ++col;
        }
    }

    const Matrix v_inv = inverse(v);
    Matrix scaled = v;
    for (std::size_t c = 0; c < n; ++c) {
        const Complex lam = column_eigenvalue[c];
        const Complex root = std::polar(std::pow(std::abs(lam), 1.0 / static_cast<double>(T)),
                                        std::arg(lam) / static_cast<double>(T));
        for (std::size_t r = 0; r < n; ++r) scaled.at(r, c) *= root;
    }
    Matrix result = scaled * v_inv;

    if (relative_residual(matrix_power(result, T), m) > 1e-6)
        throw NumericError("matrix root verification failed: eigendecomposition too ill-conditioned");
    return result;
}

Quadratic solve_quadratic(Complex a2, Complex a1, Complex a0) {
    if (a2 == Complex{})
        throw ValidationError("quadratic with zero leading coefficient");
    Quadratic q;
    q.a2 = a2;
    q.a1 = a1;
    q.a0 = a0;
    q.discriminant = a1 * a1 - 4.0 * a2 * a0;

    const Complex sq = std::sqrt(q.discriminant);
    // Pick the sign that avoids cancellation in a1 + s*sq.
    const double sign = (a1.real() * sq.real() + a1.imag() * sq.imag()) >= 0.0 ? 1.0 : -1.0;
    const Complex w = -(a1 + sign * sq) / 2.0;
    Complex r1, r2;
    if (w == Complex{}) {
        // a1 and the discriminant both vanish: double root at -a1/(2 a2).
        r1 = r2 = -a1 / (2.0 * a2);
    } else {
        r1 = w / a2;
        r2 = a0 / w;
    }
    if (complex_less(r1, r2)) std::swap(r1, r2);
    q.roots = {r1, r2};
    return q;
}

} // namespace diagrec
