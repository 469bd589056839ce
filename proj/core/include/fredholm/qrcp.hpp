#pragma once

#include <span>
#include <vector>

#include "fredholm/matrix.hpp"

namespace fredholm {

///
/// Householder QR with column pivoting, M P = Q R, used as a rank-revealing
/// factorization of the small reduced systems. Rank is the number of diagonal
/// entries of R with |R_kk| > rank_tol * max(|R_00|, scale).
///
class PivotedQR {
public:
    PivotedQR(const Matrix& m, double rank_tol, double scale = 0.0);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t rank() const noexcept { return rank_; }

    /// |R_kk| for every k < min(rows, cols)
    const std::vector<double>& diagonal() const noexcept { return diag_; }

    /// Q^H b
    std::vector<Scalar> apply_qh(std::span<const Scalar> b) const;

    /// Euclidean-orthonormal basis of the null space, one vector per column.
    std::vector<std::vector<Scalar>> null_space() const;

    /// Minimum-norm least-squares solution.
    std::vector<Scalar> solve_min_norm(std::span<const Scalar> b) const;

private:
    /// a solution with zero free variables, x = P [R11^-1 (Q^H b)_1; 0]
    std::vector<Scalar> basic_solution(std::span<const Scalar> b) const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t rank_ = 0;
    Matrix qr_;                    // R above the diagonal, Householder vectors below
    std::vector<Scalar> tau_;      // Householder scalars
    std::vector<std::size_t> perm_; // column k of M P is column perm_[k] of M
    std::vector<double> diag_;
};

} // namespace fredholm
