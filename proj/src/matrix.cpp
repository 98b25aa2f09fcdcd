#include "diagrec/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace diagrec {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw ValidationError(std::string("size mismatch in ") + what);
}

} // namespace

Vector& Vector::operator+=(const Vector& o) {
    require_same_size(size(), o.size(), "vector addition");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& o) {
    require_same_size(size(), o.size(), "vector subtraction");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

Vector& Vector::operator*=(Complex s) {
    for (auto& x : v_) x *= s;
    return *this;
}

double Vector::inf_norm() const {
    double m = 0.0;
    for (const auto& x : v_) m = std::max(m, std::abs(x));
    return m;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(Complex s, Vector a) { return a *= s; }

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw ValidationError("ragged matrix initializer");
        a_.insert(a_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Complex Matrix::trace() const {
    if (!square())
        throw ValidationError("trace of a non-square matrix");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require_same_size(rows_, o.rows_, "matrix addition");
    require_same_size(cols_, o.cols_, "matrix addition");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require_same_size(rows_, o.rows_, "matrix subtraction");
    require_same_size(cols_, o.cols_, "matrix subtraction");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    for (auto& x : a_) x *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_size(a.cols(), b.rows(), "matrix product");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a.at(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
    require_same_size(a.cols(), x.size(), "matrix-vector product");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += a.at(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += std::norm(m.at(i, j));
    return std::sqrt(s);
}

double max_abs(const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            s = std::max(s, std::abs(m.at(i, j)));
    return s;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    require_same_size(a.rows(), b.rows(), "matrix comparison");
    require_same_size(a.cols(), b.cols(), "matrix comparison");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            s = std::max(s, std::abs(a.at(i, j) - b.at(i, j)));
    return s;
}

double relative_residual(const Matrix& a, const Matrix& ref) {
    Matrix d = a;
    d -= ref;
    return frobenius_norm(d) / std::max(1.0, frobenius_norm(ref));
}

Matrix product_chain(std::span<const Matrix> factors, std::size_t dim_if_empty) {
    if (factors.empty())
        return Matrix::identity(dim_if_empty);
    Matrix acc = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i];
    return acc;
}

namespace {

// LU with partial pivoting; returns U's diagonal product and the permutation
// sign, or the offending pivot when the threshold test fails.
struct LuResult {
    Complex det;
    bool singular;
    double bad_pivot;
};

LuResult lu_determinant(Matrix m) {
    const std::size_t n = m.rows();
    const double scale = max_abs(m);
    const double threshold = 1e-12 * scale;
    Complex det = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double pivot_mag = std::abs(m.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double mag = std::abs(m.at(i, k));
            if (mag > pivot_mag) { pivot_mag = mag; pivot_row = i; }
        }
        if (pivot_mag <= threshold || pivot_mag == 0.0)
            return {Complex{}, true, pivot_mag};
        if (pivot_row != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m.at(k, j), m.at(pivot_row, j));
            det = -det;
        }
        det *= m.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = m.at(i, k) / m.at(k, k);
            if (f == Complex{}) continue;
            for (std::size_t j = k; j < n; ++j)
                m.at(i, j) -= f * m.at(k, j);
        }
    }
    return {det, false, 0.0};
}

} // namespace

Complex determinant(const Matrix& m) {
    if (!m.square())
        throw ValidationError("determinant of a non-square matrix");
    const auto lu = lu_determinant(m);
    // A failed pivot threshold means the determinant is numerically zero.
    return lu.singular ? Complex{} : lu.det;
}

Matrix inverse(const Matrix& m) {
    if (!m.square())
        throw ValidationError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    const double threshold = 1e-12 * max_abs(m);

    Matrix work = m;
    Matrix inv = Matrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double pivot_mag = std::abs(work.at(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double mag = std::abs(work.at(i, k));
            if (mag > pivot_mag) { pivot_mag = mag; pivot_row = i; }
        }
        if (pivot_mag <= threshold || pivot_mag == 0.0)
            throw SingularMatrixError("matrix is singular to working precision", pivot_mag);
        if (pivot_row != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work.at(k, j), work.at(pivot_row, j));
                std::swap(inv.at(k, j), inv.at(pivot_row, j));
            }
        const Complex pivot = work.at(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            work.at(k, j) /= pivot;
            inv.at(k, j) /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const Complex f = work.at(i, k);
            if (f == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work.at(i, j) -= f * work.at(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

Matrix matrix_power(const Matrix& m, std::int64_t exponent) {
    if (!m.square())
        throw ValidationError("power of a non-square matrix");
    if (exponent < 0)
        return matrix_power(inverse(m), -exponent);
    Matrix result = Matrix::identity(m.rows());
    Matrix base = m;
    auto e = static_cast<std::uint64_t>(exponent);
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

} // namespace diagrec
