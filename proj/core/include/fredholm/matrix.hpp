#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fredholm/space.hpp"

namespace fredholm {

///
/// Dense column-major matrix of scalars. Plain storage; factorizations live
/// with the modules that own them.
///
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    /// rows given as nested lists, convenient for tests and file input
    static Matrix from_rows(const std::vector<std::vector<Scalar>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

    std::span<Scalar> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
    std::span<const Scalar> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

    std::span<const Scalar> data() const noexcept { return data_; }

    /// conjugate transpose
    Matrix adjoint() const;

    std::vector<Scalar> multiply(std::span<const Scalar> x) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);

    /// max-abs entry
    double max_abs() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);

/// max-abs entry of a - b; throws DimensionError on shape mismatch
double max_abs_difference(const Matrix& a, const Matrix& b);

/// Euclidean norm of a coefficient vector
double euclidean_norm(std::span<const Scalar> x);

} // namespace fredholm
