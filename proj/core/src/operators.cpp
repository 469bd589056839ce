#include "fredholm/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "fredholm/error.hpp"

namespace fredholm {

//
// CanonicalFiniteRank
//

Vector CanonicalFiniteRank::apply(const Vector& u) const {
    Vector out(u.space());
    for (std::size_t j = 0; j < e.size(); ++j)
        out.axpy(inner_product(u, g[j]), e[j]);
    return out;
}

//
// FiniteRankOperator
//

struct FiniteRankOperator::Cache {
    std::mutex mutex;
    double rank_tol = 0.0;
    std::shared_ptr<const CanonicalFiniteRank> value;
};

FiniteRankOperator::FiniteRankOperator(SpacePtr space)
    : space_(std::move(space)), cache_(std::make_shared<Cache>()) {
    if (!space_)
        throw InvalidArgument("finite-rank operator needs a space");
}

FiniteRankOperator::FiniteRankOperator(SpacePtr space, std::vector<RankOnePair> pairs)
    : space_(std::move(space)), pairs_(std::move(pairs)), cache_(std::make_shared<Cache>()) {
    if (!space_)
        throw InvalidArgument("finite-rank operator needs a space");
    for (std::size_t j = 0; j < pairs_.size(); ++j) {
        const auto ctx = "finite-rank pair " + std::to_string(j);
        require_compatible(space_, pairs_[j].a.space(), ctx.c_str());
        require_compatible(space_, pairs_[j].b.space(), ctx.c_str());
    }
}

Vector FiniteRankOperator::apply(const Vector& u) const {
    require_compatible(space_, u.space(), "finite-rank apply");
    Vector out(space_);
    for (const auto& p : pairs_)
        out.axpy(inner_product(u, p.a), p.b);
    return out;
}

FiniteRankOperator FiniteRankOperator::adjoint() const {
    std::vector<RankOnePair> swapped;
    swapped.reserve(pairs_.size());
    for (const auto& p : pairs_)
        swapped.push_back({p.b, p.a});
    return FiniteRankOperator(space_, std::move(swapped));
}

std::shared_ptr<const CanonicalFiniteRank> FiniteRankOperator::canonical(const Tolerances& tol) const {
    // racing fills compute identical values; the lock only keeps the store atomic
    std::lock_guard lock(cache_->mutex);
    if (cache_->value && cache_->rank_tol == tol.rank_tol)
        return cache_->value;
    auto value = std::make_shared<const CanonicalFiniteRank>(canonicalize(*this, tol));
    cache_->rank_tol = tol.rank_tol;
    cache_->value = value;
    return value;
}

Vector apply(const FiniteRankOperator& F, const Vector& u) { return F.apply(u); }

FiniteRankOperator adjoint(const FiniteRankOperator& F) { return F.adjoint(); }

CanonicalFiniteRank canonicalize(const FiniteRankOperator& F, const Tolerances& tol) {
    CanonicalFiniteRank out;
    std::vector<Vector> bs;
    bs.reserve(F.pairs().size());
    for (const auto& p : F.pairs())
        bs.push_back(p.b);
    out.e = orthonormalize(bs, tol);

    // g_j = F* e_j = sum_k (e_j, b_k) a_k
    out.g.reserve(out.e.size());
    for (const auto& ej : out.e) {
        Vector gj(F.space());
        for (const auto& p : F.pairs())
            gj.axpy(inner_product(ej, p.b), p.a);
        out.g.push_back(std::move(gj));
    }
    return out;
}

std::size_t rank(const FiniteRankOperator& F, const Tolerances& tol) {
    return F.canonical(tol)->rank();
}

//
// Isomorphism
//

Isomorphism::Isomorphism(SpacePtr space, Matrix matrix, const Tolerances& tol)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
    if (!space_)
        throw InvalidArgument("isomorphism needs a space");
    const std::size_t n = space_->dim();
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw DimensionError("isomorphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()) + ", space dimension is " + std::to_string(n));

    lu_ = matrix_;
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        perm_[i] = i;

    min_pivot_ = std::numeric_limits<double>::infinity();
    max_pivot_ = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(lu_(k, j), lu_(p, j));
            std::swap(perm_[k], perm_[p]);
        }
        min_pivot_ = std::min(min_pivot_, best);
        max_pivot_ = std::max(max_pivot_, best);
        if (best == 0.0)
            continue;
        const Scalar pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            lu_(i, k) /= pivot;
            const Scalar lik = lu_(i, k);
            if (lik == Scalar(0.0))
                continue;
            for (std::size_t j = k + 1; j < n; ++j)
                lu_(i, j) -= lik * lu_(k, j);
        }
    }

    if (!(max_pivot_ > 0.0) || !(min_pivot_ > tol.rank_tol * max_pivot_))
        throw SingularMatrixError("isomorphism certification failed: smallest pivot " + std::to_string(min_pivot_) +
                                      " is not above rank_tol times largest pivot " + std::to_string(max_pivot_),
                                  min_pivot_, max_pivot_);
}

Isomorphism Isomorphism::identity(SpacePtr space) {
    if (!space)
        throw InvalidArgument("isomorphism needs a space");
    const auto n = space->dim();
    Isomorphism iso(std::move(space), Matrix::identity(n));
    iso.identity_ = true;
    return iso;
}

Vector Isomorphism::apply(const Vector& u) const {
    require_compatible(space_, u.space(), "isomorphism apply");
    if (identity_)
        return u;
    return Vector(space_, matrix_.multiply(u.coords()));
}

Vector Isomorphism::apply_adjoint(const Vector& u) const {
    require_compatible(space_, u.space(), "isomorphism adjoint apply");
    if (identity_)
        return u;
    const auto w = space_->weights();
    const std::size_t n = space_->dim();
    // W^-1 B^H W u
    std::vector<Scalar> y(n);
    for (std::size_t j = 0; j < n; ++j) {
        Scalar s = 0.0;
        const auto c = matrix_.col(j);
        for (std::size_t i = 0; i < n; ++i)
            s += std::conj(c[i]) * w[i] * u[i];
        y[j] = s / w[j];
    }
    return Vector(space_, std::move(y));
}

Vector Isomorphism::solve(const Vector& f) const {
    require_compatible(space_, f.space(), "isomorphism solve");
    if (identity_)
        return f;
    const std::size_t n = space_->dim();
    std::vector<Scalar> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = f[perm_[i]];
    // L (unit lower)
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = j + 1; i < n; ++i)
            x[i] -= lu_(i, j) * x[j];
    // U
    for (std::size_t j = n; j-- > 0;) {
        x[j] /= lu_(j, j);
        for (std::size_t i = 0; i < j; ++i)
            x[i] -= lu_(i, j) * x[j];
    }
    return Vector(space_, std::move(x));
}

Vector Isomorphism::solve_adjoint(const Vector& f) const {
    require_compatible(space_, f.space(), "isomorphism adjoint solve");
    if (identity_)
        return f;
    const std::size_t n = space_->dim();
    const auto w = space_->weights();

    // (B*)^-1 f = W^-1 (B^H)^-1 W f, with B^H = U^H L^H P
    std::vector<Scalar> r(n);
    for (std::size_t i = 0; i < n; ++i)
        r[i] = w[i] * f[i];
    // U^H r' = r (lower triangular)
    for (std::size_t i = 0; i < n; ++i) {
        Scalar s = r[i];
        for (std::size_t k = 0; k < i; ++k)
            s -= std::conj(lu_(k, i)) * r[k];
        r[i] = s / std::conj(lu_(i, i));
    }
    // L^H s = r' (unit upper triangular)
    for (std::size_t i = n; i-- > 0;) {
        Scalar s = r[i];
        for (std::size_t k = i + 1; k < n; ++k)
            s -= std::conj(lu_(k, i)) * r[k];
        r[i] = s;
    }
    std::vector<Scalar> y(n);
    for (std::size_t i = 0; i < n; ++i)
        y[perm_[i]] = r[i];
    for (std::size_t i = 0; i < n; ++i)
        y[i] /= w[i];
    return Vector(space_, std::move(y));
}

Vector iso_solve(const Isomorphism& B, const Vector& f, bool adjoint_flag) {
    return adjoint_flag ? B.solve_adjoint(f) : B.solve(f);
}

FiniteRankOperator compose_with_inverse(const FiniteRankOperator& F, const Isomorphism& B) {
    require_compatible(F.space(), B.space(), "compose_with_inverse");
    std::vector<RankOnePair> pairs;
    pairs.reserve(F.pairs().size());
    for (const auto& p : F.pairs())
        pairs.push_back({B.solve_adjoint(p.a), p.b});
    return FiniteRankOperator(F.space(), std::move(pairs));
}

} // namespace fredholm
