#pragma once

#include <optional>
#include <vector>

#include "fredholm/matrix.hpp"
#include "fredholm/operators.hpp"

namespace fredholm {

/// Which second-kind equation a reduced system represents.
enum class SystemSide {
    /// w + T w = f, unknowns c_j = (w, T* e_j)
    Primal,
    /// v + T* v = h, unknowns xi_j = (v, e_j)
    Adjoint,
};

///
/// The n x n algebraic system equivalent to a second-kind equation with a
/// finite-rank T of rank n. For the primal side
///
///   c_i + sum_j t_ij c_j = f_i,   t_ij = (e_j, g_i),  f_i = (f, g_i),
///
/// where e is an orthonormal basis of R(T) and g_j = T* e_j. The adjoint side
/// uses t*_ij = (g_j, e_i) and h_i = (h, e_i).
///
struct ReducedSystem {
    SystemSide side = SystemSide::Primal;
    Matrix t;
    std::vector<Scalar> rhs;
    std::vector<Vector> basis_e;
    std::vector<Vector> basis_g;
    Vector original_rhs;

    std::size_t size() const noexcept { return basis_e.size(); }
    /// I + t
    Matrix system_matrix() const;
};

enum class SolutionKind { Unique, Family, Unsolvable };

const char* to_string(SolutionKind kind) noexcept;

/// Outcome of analysing (I + t) c = rhs.
struct SystemSolution {
    SolutionKind kind = SolutionKind::Unique;
    std::optional<std::vector<Scalar>> particular;
    /// Euclidean-orthonormal basis of N(I + t)
    std::vector<std::vector<Scalar>> null_basis;
    /// |(Q^H rhs)_k| for the rank-deficient rows; empty for full rank
    std::vector<double> consistency_residuals;
    std::size_t rank = 0;
};

ReducedSystem build_system(const FiniteRankOperator& T, const Vector& f, const Tolerances& tol = {});
ReducedSystem build_adjoint_system(const FiniteRankOperator& T, const Vector& h, const Tolerances& tol = {});

///
/// Rank-revealing analysis of (I + t) c = rhs. Full rank gives Unique; otherwise
/// the system is consistent when the least-squares residual is at most
/// residual_tol * |rhs|, giving Family with the minimum-norm particular solution,
/// and Unsolvable otherwise.
///
SystemSolution solve_system(const ReducedSystem& sys, const Tolerances& tol = {});

/// Primal: w = f - sum_j c_j e_j.  Adjoint: v = h - sum_j xi_j g_j.
Vector reconstruct(const ReducedSystem& sys, std::span<const Scalar> c);

/// Primal: c_j = (w, g_j).  Adjoint: xi_j = (v, e_j).
std::vector<Scalar> extract_coefficients(const ReducedSystem& sys, const Vector& w);

/// Orthonormal basis of N(I + T), of size at most rank(T).
std::vector<Vector> null_space_second_kind(const FiniteRankOperator& T, const Tolerances& tol = {});

} // namespace fredholm
