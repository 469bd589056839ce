#include "fredholm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fredholm/error.hpp"
#include "fredholm/qrcp.hpp"

namespace fredholm {

const char* to_string(SolutionKind kind) noexcept {
    switch (kind) {
    case SolutionKind::Unique:
        return "Unique";
    case SolutionKind::Family:
        return "Family";
    case SolutionKind::Unsolvable:
        return "Unsolvable";
    }
    return "?";
}

Matrix ReducedSystem::system_matrix() const {
    Matrix m = t;
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, i) += 1.0;
    return m;
}

ReducedSystem build_system(const FiniteRankOperator& T, const Vector& f, const Tolerances& tol) {
    require_compatible(T.space(), f.space(), "build_system");
    const auto canon = T.canonical(tol);

    ReducedSystem sys;
    sys.side = SystemSide::Primal;
    sys.basis_e = canon->e;
    sys.basis_g = canon->g;
    sys.original_rhs = f;

    const std::size_t n = canon->rank();
    sys.t = Matrix(n, n);
    sys.rhs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            sys.t(i, j) = inner_product(sys.basis_e[j], sys.basis_g[i]);
        sys.rhs[i] = inner_product(f, sys.basis_g[i]);
    }
    return sys;
}

ReducedSystem build_adjoint_system(const FiniteRankOperator& T, const Vector& h, const Tolerances& tol) {
    require_compatible(T.space(), h.space(), "build_adjoint_system");
    const auto canon = T.canonical(tol);

    ReducedSystem sys;
    sys.side = SystemSide::Adjoint;
    sys.basis_e = canon->e;
    sys.basis_g = canon->g;
    sys.original_rhs = h;

    const std::size_t n = canon->rank();
    sys.t = Matrix(n, n);
    sys.rhs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            sys.t(i, j) = inner_product(sys.basis_g[j], sys.basis_e[i]);
        sys.rhs[i] = inner_product(h, sys.basis_e[i]);
    }
    return sys;
}

SystemSolution solve_system(const ReducedSystem& sys, const Tolerances& tol) {
    SystemSolution out;
    const std::size_t n = sys.size();
    if (n == 0) {
        out.kind = SolutionKind::Unique;
        out.particular = std::vector<Scalar>{};
        return out;
    }

    // I + t can be all but zero (t = -1 for n = 1), so the identity sets the scale
    const PivotedQR qr(sys.system_matrix(), tol.rank_tol, 1.0);
    out.rank = qr.rank();

    if (qr.rank() == n) {
        out.kind = SolutionKind::Unique;
        out.particular = qr.solve_min_norm(sys.rhs);
        return out;
    }

    out.null_basis = qr.null_space();

    // the trailing n - r entries of Q^H rhs are the least-squares residual
    const auto y = qr.apply_qh(sys.rhs);
    double residual2 = 0.0;
    for (std::size_t k = qr.rank(); k < n; ++k) {
        out.consistency_residuals.push_back(std::abs(y[k]));
        residual2 += std::norm(y[k]);
    }
    const double residual = std::sqrt(residual2);

    // rhs_i = (f, d_i) is pure rounding when f is consistent and I + t vanishes,
    // so measure against the size rhs could have had, not the size it has
    const auto& dual = sys.side == SystemSide::Primal ? sys.basis_g : sys.basis_e;
    double dual_norm = 0.0;
    for (const auto& d : dual)
        dual_norm = std::max(dual_norm, d.norm());
    const double scale = std::max(euclidean_norm(sys.rhs), sys.original_rhs.norm() * dual_norm);

    if (residual <= tol.residual_tol * scale) {
        out.kind = SolutionKind::Family;
        out.particular = qr.solve_min_norm(sys.rhs);
    } else {
        out.kind = SolutionKind::Unsolvable;
    }
    return out;
}

Vector reconstruct(const ReducedSystem& sys, std::span<const Scalar> c) {
    if (c.size() != sys.size())
        throw DimensionError("reconstruct: " + std::to_string(c.size()) + " coefficients for a system of size " +
                             std::to_string(sys.size()));
    const auto& basis = sys.side == SystemSide::Primal ? sys.basis_e : sys.basis_g;
    Vector w = sys.original_rhs;
    for (std::size_t j = 0; j < c.size(); ++j)
        w.axpy(-c[j], basis[j]);
    return w;
}

std::vector<Scalar> extract_coefficients(const ReducedSystem& sys, const Vector& w) {
    const auto& basis = sys.side == SystemSide::Primal ? sys.basis_g : sys.basis_e;
    std::vector<Scalar> c;
    c.reserve(basis.size());
    for (const auto& v : basis)
        c.push_back(inner_product(w, v));
    return c;
}

std::vector<Vector> null_space_second_kind(const FiniteRankOperator& T, const Tolerances& tol) {
    const Vector zero(T.space());
    const auto sys = build_system(T, zero, tol);
    const auto sol = solve_system(sys, tol);

    std::vector<Vector> ws;
    ws.reserve(sol.null_basis.size());
    for (const auto& c : sol.null_basis)
        ws.push_back(reconstruct(sys, c));
    return orthonormalize(ws, tol);
}

} // namespace fredholm
