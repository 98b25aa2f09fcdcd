#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "diagrec/errors.hpp"

namespace diagrec {

using Complex = std::complex<double>;

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t n) : v_(n) {}
    explicit Vector(std::vector<Complex> v) : v_(std::move(v)) {}
    Vector(std::initializer_list<Complex> v) : v_(v) {}

    static Vector zero(std::size_t n) { return Vector(n); }

    std::size_t size() const { return v_.size(); }
    Complex& operator[](std::size_t i) { return v_[i]; }
    const Complex& operator[](std::size_t i) const { return v_[i]; }

    Vector& operator+=(const Vector& o);
    Vector& operator-=(const Vector& o);
    Vector& operator*=(Complex s);

    bool operator==(const Vector&) const = default;

    double inf_norm() const;

private:
    std::vector<Complex> v_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(Complex s, Vector a);

// Dense square-or-rectangular complex matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Complex& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Complex trace() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(Complex s);

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Complex> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Complex s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

double frobenius_norm(const Matrix& m);
double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

// Relative Frobenius residual of "a vs reference": ||a - ref||_F / max(1, ||ref||_F).
double relative_residual(const Matrix& a, const Matrix& ref);

// Left-to-right product of the factors; the empty product is the
// dim_if_empty identity.
Matrix product_chain(std::span<const Matrix> factors, std::size_t dim_if_empty);

Complex determinant(const Matrix& m);

// Partial-pivoting Gauss-Jordan inversion. A pivot smaller than
// 1e-12 * (largest entry magnitude of the input) raises SingularMatrixError
// carrying that pivot magnitude.
Matrix inverse(const Matrix& m);

// Integer matrix power; negative exponents invert first.
Matrix matrix_power(const Matrix& m, std::int64_t exponent);

} // namespace diagrec
