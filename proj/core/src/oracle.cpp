#include "fredholm/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "fredholm/alternative.hpp"
#include "fredholm/error.hpp"

namespace fredholm::oracle {

namespace {

using EMatrix = Eigen::MatrixXcd;
using EVector = Eigen::VectorXcd;

// W^1/2 M W^-1/2: unitarily equivalent to M in the weighted inner product
EMatrix symmetrized(const DenseMatrix& m) {
    const auto w = m.space->weights();
    const auto n = static_cast<Eigen::Index>(m.space->dim());
    EMatrix out(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            out(i, j) = m.entries(i, j) * std::sqrt(w[i] / w[j]);
    return out;
}

EVector to_tilde(const Vector& v) {
    const auto w = v.space()->weights();
    EVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k)
        out(static_cast<Eigen::Index>(k)) = v[k] * std::sqrt(w[k]);
    return out;
}

Vector from_tilde(const SpacePtr& space, const EVector& x) {
    const auto w = space->weights();
    std::vector<Scalar> coords(space->dim());
    for (std::size_t k = 0; k < coords.size(); ++k)
        coords[k] = x(static_cast<Eigen::Index>(k)) / std::sqrt(w[k]);
    return Vector(space, std::move(coords));
}

struct Svd {
    Eigen::BDCSVD<EMatrix> svd;
    std::size_t rank = 0;
};

Svd decompose(const DenseMatrix& m, const Tolerances& tol) {
    if (!m.space || m.entries.rows() != m.space->dim() || m.entries.cols() != m.space->dim())
        throw DimensionError("oracle: matrix shape does not match its space");
    Svd out{Eigen::BDCSVD<EMatrix>(symmetrized(m), Eigen::ComputeFullU | Eigen::ComputeFullV)};
    const auto& s = out.svd.singularValues();
    if (s.size() > 0 && s(0) > 0.0) {
        const double cutoff = tol.rank_tol * s(0);
        while (out.rank < static_cast<std::size_t>(s.size()) && s(static_cast<Eigen::Index>(out.rank)) > cutoff)
            ++out.rank;
    }
    return out;
}

template <typename Op>
DenseMatrix materialize_with(const SpacePtr& space, const Op& op) {
    const std::size_t n = space->dim();
    DenseMatrix out{Matrix(n, n), space};
    for (std::size_t k = 0; k < n; ++k) {
        const auto col = op(Vector::unit(space, k));
        for (std::size_t i = 0; i < n; ++i)
            out.entries(i, k) = col[i];
    }
    return out;
}

} // namespace

Vector DenseMatrix::apply(const Vector& u) const {
    require_compatible(space, u.space(), "dense apply");
    return Vector(space, entries.multiply(u.coords()));
}

DenseMatrix DenseMatrix::adjoint() const {
    const auto w = space->weights();
    const std::size_t n = space->dim();
    DenseMatrix out{Matrix(n, n), space};
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            out.entries(i, j) = std::conj(entries(j, i)) * w[j] / w[i];
    return out;
}

DenseMatrix materialize(const FiniteRankOperator& op) {
    return materialize_with(op.space(), [&](const Vector& e) { return op.apply(e); });
}

DenseMatrix materialize(const Isomorphism& op) {
    return DenseMatrix{op.matrix(), op.space()};
}

DenseMatrix materialize(const FredholmOperator& op) {
    return materialize_with(op.space(), [&](const Vector& e) { return op.apply(e); });
}

std::vector<double> singular_values(const DenseMatrix& m) {
    const auto svd = decompose(m, Tolerances{});
    const auto& s = svd.svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

std::size_t rank(const DenseMatrix& m, const Tolerances& tol) {
    return decompose(m, tol).rank;
}

DenseSolveResult dense_solve(const DenseMatrix& m, const Vector& f, const Tolerances& tol) {
    require_compatible(m.space, f.space(), "dense_solve");
    const auto svd = decompose(m, tol);
    const std::size_t n = m.space->dim();

    DenseSolveResult out;
    out.rank = svd.rank;
    out.nullity = n - svd.rank;

    const EVector ft = to_tilde(f);
    const auto& U = svd.svd.matrixU();
    const auto& V = svd.svd.matrixV();
    const auto& s = svd.svd.singularValues();
    const auto r = static_cast<Eigen::Index>(svd.rank);

    EVector coeffs = U.leftCols(r).adjoint() * ft;
    for (Eigen::Index k = 0; k < r; ++k)
        coeffs(k) /= s(k);
    const EVector xt = V.leftCols(r) * coeffs;

    const EMatrix mt = symmetrized(m);
    const double fnorm = ft.norm();
    out.relative_residual = fnorm > 0.0 ? (mt * xt - ft).norm() / fnorm : 0.0;
    out.solution = from_tilde(m.space, xt);

    if (out.nullity == 0)
        out.kind = SolutionKind::Unique;
    else if (out.relative_residual <= tol.residual_tol)
        out.kind = SolutionKind::Family;
    else
        out.kind = SolutionKind::Unsolvable;
    if (out.kind == SolutionKind::Unsolvable)
        out.solution.reset();
    return out;
}

std::vector<Vector> null_space(const DenseMatrix& m, const Tolerances& tol) {
    const auto svd = decompose(m, tol);
    const auto& V = svd.svd.matrixV();
    std::vector<Vector> out;
    for (Eigen::Index k = static_cast<Eigen::Index>(svd.rank); k < V.cols(); ++k)
        out.push_back(from_tilde(m.space, V.col(k)));
    return out;
}

std::vector<Vector> adjoint_null_space(const DenseMatrix& m, const Tolerances& tol) {
    const auto svd = decompose(m, tol);
    const auto& U = svd.svd.matrixU();
    std::vector<Vector> out;
    for (Eigen::Index k = static_cast<Eigen::Index>(svd.rank); k < U.cols(); ++k)
        out.push_back(from_tilde(m.space, U.col(k)));
    return out;
}

Vector min_norm_solve(const DenseMatrix& m, const Vector& f, const Tolerances& tol) {
    require_compatible(m.space, f.space(), "min_norm_solve");
    const auto svd = decompose(m, tol);
    const auto r = static_cast<Eigen::Index>(svd.rank);
    EVector coeffs = svd.svd.matrixU().leftCols(r).adjoint() * to_tilde(f);
    for (Eigen::Index k = 0; k < r; ++k)
        coeffs(k) /= svd.svd.singularValues()(k);
    return from_tilde(m.space, svd.svd.matrixV().leftCols(r) * coeffs);
}

double subspace_distance(std::span<const Vector> a, std::span<const Vector> b) {
    if (a.size() != b.size())
        return 1.0;
    if (a.empty())
        return 0.0;
    // sin of the largest principal angle = ||(I - P_b) Q_a||, from the residuals
    // directly; 1 - cos^2 would lose half the digits
    const auto k = static_cast<Eigen::Index>(a.size());
    std::vector<Vector> res;
    res.reserve(a.size());
    for (const auto& v : a)
        res.push_back(project_out(v, b));
    EMatrix g(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j)
            g(i, j) = inner_product(res[static_cast<std::size_t>(j)], res[static_cast<std::size_t>(i)]);
    Eigen::SelfAdjointEigenSolver<EMatrix> eig(g, Eigen::EigenvaluesOnly);
    return std::min(1.0, std::sqrt(std::max(0.0, eig.eigenvalues()(k - 1))));
}

} // namespace fredholm::oracle
