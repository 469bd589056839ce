#include <gtest/gtest.h>

#include <cmath>

#include "fredholm/error.hpp"
#include "fredholm/space.hpp"
#include "fredholm/testing/generators.hpp"

using namespace fredholm;
using fredholm::testing::Rng;

namespace {

// plain scalar loop, independent of the Vector machinery
Scalar weighted_sum(std::span<const double> w, std::span<const Scalar> u, std::span<const Scalar> v) {
    Scalar s = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k)
        s += w[k] * u[k] * std::conj(v[k]);
    return s;
}

} // namespace

TEST(Space, RejectsInvalidWeightsAndDimension) {
    EXPECT_THROW(Space::weighted({}), InvalidArgument);
    EXPECT_THROW(Space::weighted({1.0, 0.0}), InvalidArgument);
    EXPECT_THROW(Space::weighted({1.0, -2.0}), InvalidArgument);
    EXPECT_TRUE(Space::standard(3)->has_unit_weights());
    EXPECT_FALSE(Space::weighted({1.0, 0.5})->has_unit_weights());
}

TEST(Space, CompatibilityIsElementwise) {
    auto a = Space::weighted({0.5, 0.5});
    auto b = Space::weighted({0.5, 0.5});
    auto c = Space::weighted({0.5, 0.25});
    EXPECT_TRUE(compatible(a, b));
    EXPECT_FALSE(compatible(a, c));
    EXPECT_FALSE(compatible(a, Space::standard(2)));
    EXPECT_THROW(inner_product(Vector(a, {1.0, 0.0}), Vector(c, {1.0, 0.0})), DimensionError);
    EXPECT_THROW(inner_product(Vector(a, {1.0, 0.0}), Vector(Space::standard(3))), DimensionError);
}

TEST(Space, VectorLengthMustMatchDimension) {
    EXPECT_THROW(Vector(Space::standard(2), {1.0, 2.0, 3.0}), DimensionError);
}

TEST(Tolerances, Validation) {
    EXPECT_NO_THROW(Tolerances{}.validate());
    EXPECT_THROW((Tolerances{1.0, 1e-8, 1e-10}.validate()), InvalidArgument);
    EXPECT_THROW((Tolerances{1e-10, 0.0, 1e-10}.validate()), InvalidArgument);
    EXPECT_THROW((Tolerances{1e-10, 1e-8, -1.0}.validate()), InvalidArgument);
}

TEST(InnerProduct, Examples) {
    auto s = Space::standard(2);
    EXPECT_EQ(inner_product(Vector(s, {1.0, 0.0}), Vector(s, {0.0, 1.0})), Scalar(0.0));
    EXPECT_EQ(inner_product(Vector(s, {1.0, 2.0}), Vector(s, {1.0, 2.0})), Scalar(5.0));

    auto w = Space::weighted({0.5, 0.5});
    const Vector u(w, {2.0, 0.0});
    const Scalar oracle = weighted_sum(w->weights(), u.coords(), u.coords());
    EXPECT_DOUBLE_EQ(oracle.real(), 2.0);
    EXPECT_EQ(inner_product(u, u), oracle);
}

TEST(InnerProduct, LinearInFirstConjugateLinearInSecond) {
    auto s = Space::standard(2);
    const Vector u(s, {Scalar(1, 1), 2.0});
    const Vector v(s, {3.0, Scalar(0, 1)});
    const Scalar i(0, 1);
    EXPECT_NEAR(std::abs(inner_product(i * u, v) - i * inner_product(u, v)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner_product(u, i * v) - std::conj(i) * inner_product(u, v)), 0.0, 1e-15);
}

TEST(InnerProduct, PropertyConjugateSymmetryAndPositivity) {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        auto space = fredholm::testing::random_space(rng, 1 + trial % 17, trial % 2 == 0);
        const auto u = fredholm::testing::random_vector(rng, space, true);
        const auto v = fredholm::testing::random_vector(rng, space, true);
        const Scalar uv = inner_product(u, v);
        const Scalar vu = inner_product(v, u);
        EXPECT_NEAR(std::abs(uv - std::conj(vu)), 0.0, 1e-13 * (1.0 + std::abs(uv)));
        const Scalar uu = inner_product(u, u);
        EXPECT_EQ(uu.imag(), 0.0);
        EXPECT_GT(uu.real(), 0.0);
        EXPECT_NEAR(uv.real(), weighted_sum(space->weights(), u.coords(), v.coords()).real(), 1e-12);
    }
    EXPECT_EQ(inner_product(Vector(Space::standard(3)), Vector(Space::standard(3))), Scalar(0.0));
}

TEST(Orthonormalize, Examples) {
    auto s = Space::standard(2);
    const std::vector<Vector> id{Vector(s, {1.0, 0.0}), Vector(s, {0.0, 1.0})};
    const auto q = orthonormalize(id);
    ASSERT_EQ(q.size(), 2u);
    EXPECT_EQ(q[0][0], Scalar(1.0));
    EXPECT_EQ(q[1][1], Scalar(1.0));

    const std::vector<Vector> dup{Vector(s, {1.0, 1.0}), Vector(s, {1.0, 1.0})};
    const auto d = orthonormalize(dup);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_NEAR(d[0][0].real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(d[0][1].real(), 1.0 / std::sqrt(2.0), 1e-15);

    auto s3 = Space::standard(3);
    const std::vector<Vector> two{Vector(s3, {1.0, 1.0, 0.0}), Vector(s3, {1.0, 0.0, 0.0})};
    const auto t = orthonormalize(two);
    ASSERT_EQ(t.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            EXPECT_NEAR(std::abs(inner_product(t[i], t[j]) - (i == j ? 1.0 : 0.0)), 0.0, 1e-10);

    EXPECT_TRUE(orthonormalize(std::vector<Vector>{}).empty());
    EXPECT_TRUE(orthonormalize(std::vector<Vector>{Vector(s)}).empty());
}

TEST(Orthonormalize, PropertyGramIdentityAndSpanPreserved) {
    Rng rng(5);
    const Tolerances tol;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 4 + trial % 12;
        auto space = fredholm::testing::random_space(rng, n, trial % 2 == 1);
        // rank-deficient input: the last vectors are combinations of the first ones
        std::vector<Vector> vs;
        const std::size_t independent = 1 + trial % (n - 1);
        for (std::size_t j = 0; j < independent; ++j)
            vs.push_back(fredholm::testing::random_vector(rng, space, true));
        for (std::size_t j = 0; j < 3; ++j) {
            Vector c(space);
            for (const auto& v : vs)
                c.axpy(fredholm::testing::random_scalar(rng, true), v);
            vs.push_back(std::move(c));
        }
        const auto q = orthonormalize(vs, tol);
        ASSERT_EQ(q.size(), independent);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < q.size(); ++j)
                EXPECT_LE(std::abs(inner_product(q[i], q[j]) - (i == j ? 1.0 : 0.0)), tol.ortho_tol);
        for (const auto& v : vs)
            EXPECT_LE(project_out(v, q).norm(), tol.ortho_tol * v.norm());
    }
}

TEST(CanonicalizeBasis, LeadingCoordinateRealPositiveAndOrdered) {
    auto s = Space::standard(3);
    const Scalar i(0, 1);
    std::vector<Vector> basis{Vector(s, {0.0, i, 0.0}), Vector(s, {-1.0, 0.0, 0.0})};
    canonicalize_basis(basis);
    EXPECT_EQ(basis[0][0], Scalar(1.0));
    EXPECT_EQ(basis[1][1], Scalar(1.0));
}
