#pragma once

#include <optional>
#include <vector>

#include "fredholm/matrix.hpp"
#include "fredholm/operators.hpp"
#include "fredholm/reduction.hpp"

namespace fredholm {
struct FredholmOperator;
}

//
// Dense brute-force reference. Everything here works on fully assembled N x N
// matrices and an SVD of the weight-symmetrized matrix W^1/2 M W^-1/2, which is
// unitarily equivalent to M in the weighted inner product. Shares nothing with
// the reduction pipeline apart from the space module.
//
namespace fredholm::oracle {

struct DenseMatrix {
    Matrix entries;
    SpacePtr space;

    Vector apply(const Vector& u) const;
    /// matrix of the inner-product adjoint, W^-1 M^H W
    DenseMatrix adjoint() const;
};

/// Column k is the operator applied to the k-th coordinate unit vector.
DenseMatrix materialize(const FiniteRankOperator& op);
DenseMatrix materialize(const Isomorphism& op);
DenseMatrix materialize(const FredholmOperator& op);

struct DenseSolveResult {
    SolutionKind kind = SolutionKind::Unique;
    /// unique solution or minimum-norm least-squares solution
    std::optional<Vector> solution;
    std::size_t rank = 0;
    std::size_t nullity = 0;
    /// |M x - f| / |f| for the least-squares x (0 when f = 0)
    double relative_residual = 0.0;
};

/// Singular values in descending order.
std::vector<double> singular_values(const DenseMatrix& m);

std::size_t rank(const DenseMatrix& m, const Tolerances& tol = {});

/// Classification of M x = f, mirroring SystemSolution semantics.
DenseSolveResult dense_solve(const DenseMatrix& m, const Vector& f, const Tolerances& tol = {});

/// Orthonormal basis of N(M) in the weighted inner product.
std::vector<Vector> null_space(const DenseMatrix& m, const Tolerances& tol = {});

/// Orthonormal basis of N(M*) for the inner-product adjoint M*.
std::vector<Vector> adjoint_null_space(const DenseMatrix& m, const Tolerances& tol = {});

/// Minimum-norm least-squares solution of M x = f.
Vector min_norm_solve(const DenseMatrix& m, const Vector& f, const Tolerances& tol = {});

///
/// Largest principal angle sine between two subspaces given by orthonormal
/// bases; 0 for identical subspaces, 1 when dimensions differ.
///
double subspace_distance(std::span<const Vector> a, std::span<const Vector> b);

} // namespace fredholm::oracle
