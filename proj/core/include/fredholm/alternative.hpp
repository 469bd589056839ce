#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fredholm/operators.hpp"
#include "fredholm/oracle.hpp"
#include "fredholm/reduction.hpp"

namespace fredholm {

/// A = B + F with B an isomorphism and F of finite rank.
struct FredholmOperator {
    Isomorphism B;
    FiniteRankOperator F;

    FredholmOperator(Isomorphism iso, FiniteRankOperator finite_rank);

    const SpacePtr& space() const noexcept { return B.space(); }
    Vector apply(const Vector& u) const;
    /// A* v = B* v + F* v
    Vector apply_adjoint(const Vector& v) const;
};

enum class AlternativeCase { UniquelySolvable, Degenerate };

const char* to_string(AlternativeCase c) noexcept;

/// Which of A u = f / A* v = g a report answers.
enum class EquationSide { Direct, Adjoint };

/// General solution x = x_p + sum_{j=1}^{dimension} coeff_j basis_j.
struct SolutionFamily {
    EquationSide side = EquationSide::Direct;
    std::size_t dimension = 0;

    /// "u = u_p + sum_{j=1}^{n} a_j phi_j" (or the adjoint counterpart)
    std::string describe() const;
};

///
/// Full verdict of the alternative for one operator and (optionally) one
/// right-hand side.
///
struct AlternativeReport {
    EquationSide side = EquationSide::Direct;
    AlternativeCase alternative = AlternativeCase::UniquelySolvable;
    std::size_t n = 0;
    /// orthonormal basis of N(A)
    std::vector<Vector> phi;
    /// orthonormal basis of N(A*)
    std::vector<Vector> psi;

    bool has_rhs = false;
    bool solvable = true;
    /// |(f, psi_j)| for A u = f, |(g, phi_j)| for A* v = g
    std::vector<double> solvability_residuals;
    /// for the direct side orthogonal to N(A), for the adjoint side to N(A*)
    std::optional<Vector> particular;
    /// |A u_p - f| / |f| (0 when f = 0); set whenever `particular` is
    std::optional<double> relative_residual;
    SolutionFamily family;
};

/// Null spaces of A and A* through the reduced systems; n = dim N(A) = dim N(A*).
AlternativeReport analyze(const FredholmOperator& A, const Tolerances& tol = {});

///
/// Solves A u = f through w + T w = f, T = F B^-1, and u = B^-1 w.
/// Unsolvable right-hand sides are a report outcome, not an error.
///
AlternativeReport solve(const FredholmOperator& A, const Vector& f, const Tolerances& tol = {});

/// Solves A* v = g through v + T* v = h with h = (B*)^-1 g.
AlternativeReport solve_adjoint(const FredholmOperator& A, const Vector& g, const Tolerances& tol = {});

/// Evidence that the B of a decomposition is an isomorphism and A = B + F.
struct DecompositionCertificate {
    double min_pivot = 0.0;
    double max_pivot = 0.0;
    /// max-abs entry of A - (B + F)
    double reconstruction_error = 0.0;
    /// singular values of A used for the nullity decision
    std::vector<double> singular_values;
};

///
/// A = B + F with F u = sum_j (u, phi_j) psi_j built from orthonormal bases of
/// N(A) and N(A*).
///
struct Decomposition {
    oracle::DenseMatrix A;
    Isomorphism B;
    FiniteRankOperator F;
    std::vector<Vector> phi;
    std::vector<Vector> psi;
    DecompositionCertificate certificate;

    std::size_t n() const noexcept { return phi.size(); }
};

///
/// Splits a dense Fredholm matrix into isomorphism plus finite rank. Throws
/// NumericalError when singular values straddle the rank threshold (nullity
/// ambiguous) and SingularMatrixError when B fails certification.
///
Decomposition decompose(const Matrix& a, const SpacePtr& space, const Tolerances& tol = {});

///
/// Solves B u = f along the isomorphism proof: f = A u_p + sum_j c_j psi_j with
/// u_p orthogonal to N(A) and c_j = (f, psi_j), then u = u_p - sum_j c_j phi_j.
/// Throws NumericalError if |B u - f| > residual_tol |f|.
///
Vector solve_via_decomposition(const Decomposition& dec, const Vector& f, const Tolerances& tol = {});

} // namespace fredholm
