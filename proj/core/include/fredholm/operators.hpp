#pragma once

#include <memory>
#include <vector>

#include "fredholm/matrix.hpp"
#include "fredholm/space.hpp"

namespace fredholm {

/// One rank-one term u -> (u, a) b.
struct RankOnePair {
    Vector a;
    Vector b;
};

///
/// Canonical orthonormal form of a finite-rank operator:
///   F u = sum_j (u, g_j) e_j,   with (e_i, e_j) = delta_ij and g_j = F* e_j.
///
struct CanonicalFiniteRank {
    std::vector<Vector> e;
    std::vector<Vector> g;

    std::size_t rank() const noexcept { return e.size(); }
    Vector apply(const Vector& u) const;
};

///
/// Finite-rank operator in pair form F u = sum_j (u, a_j) b_j. Pairs may be
/// redundant; the rank is computed, not assumed. The canonical form is built on
/// first request and cached (shared between copies, which is safe since the
/// pairs are immutable).
///
class FiniteRankOperator {
public:
    explicit FiniteRankOperator(SpacePtr space);
    FiniteRankOperator(SpacePtr space, std::vector<RankOnePair> pairs);

    static FiniteRankOperator zero(SpacePtr space) { return FiniteRankOperator(std::move(space)); }

    const SpacePtr& space() const noexcept { return space_; }
    const std::vector<RankOnePair>& pairs() const noexcept { return pairs_; }
    bool empty() const noexcept { return pairs_.empty(); }

    Vector apply(const Vector& u) const;
    /// pairs (b_j, a_j): the inner-product adjoint
    FiniteRankOperator adjoint() const;

    /// Canonical form for the given tolerances; cached per tolerance value.
    std::shared_ptr<const CanonicalFiniteRank> canonical(const Tolerances& tol = {}) const;

private:
    struct Cache;

    SpacePtr space_;
    std::vector<RankOnePair> pairs_;
    std::shared_ptr<Cache> cache_;
};

Vector apply(const FiniteRankOperator& F, const Vector& u);
FiniteRankOperator adjoint(const FiniteRankOperator& F);
CanonicalFiniteRank canonicalize(const FiniteRankOperator& F, const Tolerances& tol = {});
std::size_t rank(const FiniteRankOperator& F, const Tolerances& tol = {});

///
/// Dense invertible operator B with an LU factorization (partial pivoting) kept
/// for repeated solves with B and with its inner-product adjoint
/// B* = W^-1 B^H W. Construction certifies invertibility: the smallest pivot
/// magnitude must exceed rank_tol times the largest.
///
class Isomorphism {
public:
    Isomorphism(SpacePtr space, Matrix matrix, const Tolerances& tol = {});

    static Isomorphism identity(SpacePtr space);

    const SpacePtr& space() const noexcept { return space_; }
    const Matrix& matrix() const noexcept { return matrix_; }
    bool is_identity() const noexcept { return identity_; }

    double min_pivot() const noexcept { return min_pivot_; }
    double max_pivot() const noexcept { return max_pivot_; }

    Vector apply(const Vector& u) const;
    Vector apply_adjoint(const Vector& u) const;

    /// B^-1 f
    Vector solve(const Vector& f) const;
    /// (B*)^-1 f in the weighted inner product
    Vector solve_adjoint(const Vector& f) const;

private:
    SpacePtr space_;
    Matrix matrix_;
    Matrix lu_;
    std::vector<std::size_t> perm_;
    double min_pivot_ = 1.0;
    double max_pivot_ = 1.0;
    bool identity_ = false;
};

/// B^-1 f, or (B*)^-1 f when `adjoint_flag` is set.
Vector iso_solve(const Isomorphism& B, const Vector& f, bool adjoint_flag = false);

///
/// T = F B^-1 in pair form: since (B^-1 u, a_j) = (u, (B*)^-1 a_j), the pairs
/// are ((B*)^-1 a_j, b_j). Rank is preserved.
///
FiniteRankOperator compose_with_inverse(const FiniteRankOperator& F, const Isomorphism& B);

} // namespace fredholm
