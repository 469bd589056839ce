#include "fredholm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fredholm/error.hpp"

namespace fredholm {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Scalar>>& rows) {
    const std::size_t nrows = rows.size();
    const std::size_t ncols = nrows ? rows.front().size() : 0;
    Matrix m(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i) {
        if (rows[i].size() != ncols)
            throw DimensionError("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                 " entries, expected " + std::to_string(ncols));
        for (std::size_t j = 0; j < ncols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

std::vector<Scalar> Matrix::multiply(std::span<const Scalar> x) const {
    if (x.size() != cols_)
        throw DimensionError("matrix-vector product: " + std::to_string(cols_) + " columns, vector length " +
                             std::to_string(x.size()));
    std::vector<Scalar> y(rows_);
    for (std::size_t j = 0; j < cols_; ++j) {
        const auto c = col(j);
        for (std::size_t i = 0; i < rows_; ++i)
            y[i] += c[i] * x[j];
    }
    return y;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix addition: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        data_[k] += other.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionError("matrix subtraction: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k)
        data_[k] -= other.data_[k];
    return *this;
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : data_)
        m = std::max(m, std::abs(x));
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matrix product: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar bkj = b(k, j);
            for (std::size_t i = 0; i < a.rows(); ++i)
                c(i, j) += a(i, k) * bkj;
        }
    return c;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

double max_abs_difference(const Matrix& a, const Matrix& b) {
    return (a - b).max_abs();
}

double euclidean_norm(std::span<const Scalar> x) {
    double sum = 0.0;
    for (const auto& v : x)
        sum += std::norm(v);
    return std::sqrt(sum);
}

} // namespace fredholm
