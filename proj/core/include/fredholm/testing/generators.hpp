#pragma once

// Seeded random instances for property checks and the CLI verify --random mode.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "fredholm/alternative.hpp"
#include "fredholm/operators.hpp"
#include "fredholm/space.hpp"

namespace fredholm::testing {

using Rng = std::mt19937_64;

struct Flavor {
    bool weighted = false;
    bool complex = false;
};

inline Flavor random_flavor(Rng& rng) {
    std::bernoulli_distribution coin(0.5);
    return {coin(rng), coin(rng)};
}

inline SpacePtr random_space(Rng& rng, std::size_t n, bool weighted) {
    if (!weighted)
        return Space::standard(n);
    std::uniform_real_distribution<double> w(0.5, 2.0);
    std::vector<double> weights(n);
    for (auto& x : weights)
        x = w(rng);
    return Space::weighted(std::move(weights));
}

inline Scalar random_scalar(Rng& rng, bool complex) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    return complex ? Scalar(re, g(rng)) : Scalar(re, 0.0);
}

inline Vector random_vector(Rng& rng, const SpacePtr& space, bool complex) {
    Vector v(space);
    for (std::size_t k = 0; k < v.size(); ++k)
        v[k] = random_scalar(rng, complex);
    return v;
}

/// Diagonally dominated random matrix; condition number stays O(1).
inline Isomorphism random_isomorphism(Rng& rng, const SpacePtr& space, bool complex) {
    const std::size_t n = space->dim();
    std::uniform_real_distribution<double> mag(1.0, 2.0);
    std::bernoulli_distribution sign(0.5);
    Matrix m(n, n);
    const double scale = 0.3 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            m(i, j) = scale * random_scalar(rng, complex);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) += (sign(rng) ? 1.0 : -1.0) * mag(rng);
    return Isomorphism(space, std::move(m));
}

/// Generic finite-rank operator with `pairs` random pairs (rank = pairs when pairs <= N).
inline FiniteRankOperator random_finite_rank(Rng& rng, const SpacePtr& space, std::size_t pairs, bool complex) {
    std::vector<RankOnePair> ps;
    for (std::size_t j = 0; j < pairs; ++j) {
        auto a = random_vector(rng, space, complex);
        auto b = random_vector(rng, space, complex);
        a *= 1.0 / a.norm();
        b *= 1.0 / b.norm();
        ps.push_back({std::move(a), std::move(b)});
    }
    return FiniteRankOperator(space, std::move(ps));
}

///
/// T of rank `rank` with dim N(I + T) = `nullity` exactly:
///   T u = -sum_{j<k} (u, e_j) e_j + sum_{j>=k} (u, a_j) e_j
/// with e orthonormal, a_j orthogonal to e_0..e_{k-1} and |a_j| = 0.3, so the
/// nonzero spectrum of I + T stays well away from zero.
///
inline FiniteRankOperator degenerate_second_kind(Rng& rng, const SpacePtr& space, std::size_t rank,
                                                  std::size_t nullity, bool complex) {
    std::vector<Vector> raw;
    for (std::size_t j = 0; j < rank; ++j)
        raw.push_back(random_vector(rng, space, complex));
    const auto e = orthonormalize(raw);
    const std::span<const Vector> leading(e.data(), nullity);

    std::vector<RankOnePair> ps;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (j < nullity) {
            ps.push_back({-1.0 * e[j], e[j]});
        } else {
            auto a = project_out(random_vector(rng, space, complex), leading);
            a *= 0.3 / a.norm();
            ps.push_back({std::move(a), e[j]});
        }
    }
    return FiniteRankOperator(space, std::move(ps));
}

/// F = T B in pair form: (B* a_j, b_j). Optionally splits each pair into two
/// pairs sharing b, so the pair count exceeds the rank.
inline FiniteRankOperator times_isomorphism(const FiniteRankOperator& T, const Isomorphism& B, Rng& rng,
                                            bool redundant) {
    std::vector<RankOnePair> ps;
    std::uniform_real_distribution<double> split(0.2, 0.8);
    for (const auto& p : T.pairs()) {
        const auto a = B.apply_adjoint(p.a);
        if (redundant) {
            const double s = split(rng);
            ps.push_back({s * a, p.b});
            ps.push_back({(1.0 - s) * a, p.b});
        } else {
            ps.push_back({a, p.b});
        }
    }
    return FiniteRankOperator(T.space(), std::move(ps));
}

struct Instance {
    SpacePtr space;
    FredholmOperator A;
    std::size_t rank = 0;
    std::size_t nullity = 0;
    Flavor flavor;
};

/// Random A = B + F, N in [n_lo, n_hi], rank(F) in [0, max_rank], nullity in [0, rank].
inline Instance random_instance(Rng& rng, std::size_t n_lo, std::size_t n_hi, std::size_t max_rank) {
    std::uniform_int_distribution<std::size_t> dim(n_lo, n_hi);
    const auto flavor = random_flavor(rng);
    const std::size_t n = dim(rng);
    const std::size_t r = std::uniform_int_distribution<std::size_t>(0, std::min(max_rank, n))(rng);
    // nullity n would make A vanish to rounding, where no relative test means anything
    const std::size_t k = std::uniform_int_distribution<std::size_t>(0, std::min(r, n - 1))(rng);
    auto space = random_space(rng, n, flavor.weighted);
    auto B = random_isomorphism(rng, space, flavor.complex);
    const auto T = degenerate_second_kind(rng, space, r, k, flavor.complex);
    const bool redundant = std::bernoulli_distribution(0.3)(rng);
    auto F = times_isomorphism(T, B, rng, redundant);
    return Instance{space, FredholmOperator(std::move(B), std::move(F)), r, k, flavor};
}

/// Right-hand side that is consistent (A x) or generic, each with probability 1/2.
inline Vector random_rhs(Rng& rng, const Instance& inst) {
    auto x = random_vector(rng, inst.space, inst.flavor.complex);
    if (std::bernoulli_distribution(0.5)(rng))
        return inst.A.apply(x);
    return x;
}

/// Dense matrix X D Y^H of rank N - nullity with D in [0.5, 2].
inline Matrix random_singular_matrix(Rng& rng, std::size_t n, std::size_t nullity, bool complex) {
    const auto unit = Space::standard(n);
    std::vector<Vector> xs;
    std::vector<Vector> ys;
    for (std::size_t j = 0; j + nullity < n; ++j) {
        xs.push_back(random_vector(rng, unit, complex));
        ys.push_back(random_vector(rng, unit, complex));
    }
    const auto X = orthonormalize(xs);
    const auto Y = orthonormalize(ys);
    std::uniform_real_distribution<double> d(0.5, 2.0);
    Matrix m(n, n);
    for (std::size_t k = 0; k < X.size(); ++k) {
        const double s = d(rng);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                m(i, j) += s * X[k][i] * std::conj(Y[k][j]);
    }
    return m;
}

} // namespace fredholm::testing
