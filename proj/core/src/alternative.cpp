#include "fredholm/alternative.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fredholm/error.hpp"

namespace fredholm {

const char* to_string(AlternativeCase c) noexcept {
    return c == AlternativeCase::UniquelySolvable ? "UniquelySolvable" : "Degenerate";
}

std::string SolutionFamily::describe() const {
    const bool direct = side == EquationSide::Direct;
    const char* x = direct ? "u" : "v";
    if (dimension == 0)
        return std::string(x) + " = " + x + "_p (unique)";
    std::ostringstream os;
    os << x << " = " << x << "_p + sum_{j=1}^{" << dimension << "} " << (direct ? "a_j phi_j" : "b_j psi_j");
    return os.str();
}

FredholmOperator::FredholmOperator(Isomorphism iso, FiniteRankOperator finite_rank)
    : B(std::move(iso)), F(std::move(finite_rank)) {
    require_compatible(B.space(), F.space(), "Fredholm operator");
}

Vector FredholmOperator::apply(const Vector& u) const {
    return B.apply(u) + F.apply(u);
}

Vector FredholmOperator::apply_adjoint(const Vector& v) const {
    return B.apply_adjoint(v) + F.adjoint().apply(v);
}

namespace {

// T = F B^-1 together with the null spaces of A and A*
struct Pipeline {
    FiniteRankOperator T;
    std::vector<Vector> phi;
    std::vector<Vector> psi;
};

std::vector<Vector> homogeneous_solutions(const ReducedSystem& sys, const Tolerances& tol) {
    const auto sol = solve_system(sys, tol);
    std::vector<Vector> out;
    out.reserve(sol.null_basis.size());
    for (const auto& c : sol.null_basis)
        out.push_back(reconstruct(sys, c));
    return out;
}

Pipeline run_pipeline(const FredholmOperator& A, const Tolerances& tol) {
    Pipeline p{compose_with_inverse(A.F, A.B), {}, {}};
    const Vector zero(A.space());

    // N(A) = B^-1 N(I + T)
    auto ws = null_space_second_kind(p.T, tol);
    for (auto& w : ws)
        w = A.B.solve(w);
    p.phi = orthonormalize(ws, tol);
    canonicalize_basis(p.phi);

    // N(A*) = N(I + T*) since A* = B*(I + T*)
    auto vs = homogeneous_solutions(build_adjoint_system(p.T, zero, tol), tol);
    p.psi = orthonormalize(vs, tol);
    canonicalize_basis(p.psi);

    if (p.phi.size() != p.psi.size()) {
        std::ostringstream os;
        os << "null-space dimensions disagree: dim N(A) = " << p.phi.size() << ", dim N(A*) = " << p.psi.size()
           << "; the rank threshold " << tol.rank_tol << " is ambiguous for this operator";
        throw NumericalError(os.str());
    }
    return p;
}

AlternativeReport base_report(const Pipeline& p, EquationSide side) {
    AlternativeReport r;
    r.side = side;
    r.n = p.phi.size();
    r.alternative = r.n == 0 ? AlternativeCase::UniquelySolvable : AlternativeCase::Degenerate;
    r.phi = p.phi;
    r.psi = p.psi;
    r.family = SolutionFamily{side, r.n};
    return r;
}

double relative(double num, double den) {
    return den > 0.0 ? num / den : num;
}

} // namespace

AlternativeReport analyze(const FredholmOperator& A, const Tolerances& tol) {
    return base_report(run_pipeline(A, tol), EquationSide::Direct);
}

AlternativeReport solve(const FredholmOperator& A, const Vector& f, const Tolerances& tol) {
    require_compatible(A.space(), f.space(), "solve");
    const auto p = run_pipeline(A, tol);
    auto report = base_report(p, EquationSide::Direct);
    report.has_rhs = true;
    for (const auto& psi : p.psi)
        report.solvability_residuals.push_back(std::abs(inner_product(f, psi)));

    // w + T w = f  <=>  (I + t) c = f_i, then u = B^-1 w
    const auto sys = build_system(p.T, f, tol);
    const auto sol = solve_system(sys, tol);
    if (sol.kind == SolutionKind::Unsolvable) {
        report.solvable = false;
        return report;
    }

    const Vector w = reconstruct(sys, *sol.particular);
    Vector u = project_out(A.B.solve(w), p.phi);
    report.relative_residual = relative((A.apply(u) - f).norm(), f.norm());
    report.particular = std::move(u);
    return report;
}

AlternativeReport solve_adjoint(const FredholmOperator& A, const Vector& g, const Tolerances& tol) {
    require_compatible(A.space(), g.space(), "solve_adjoint");
    const auto p = run_pipeline(A, tol);
    auto report = base_report(p, EquationSide::Adjoint);
    report.has_rhs = true;
    for (const auto& phi : p.phi)
        report.solvability_residuals.push_back(std::abs(inner_product(g, phi)));

    // v + T* v = h with h = (B*)^-1 g; v itself solves A* v = g
    const Vector h = A.B.solve_adjoint(g);
    const auto sys = build_adjoint_system(p.T, h, tol);
    const auto sol = solve_system(sys, tol);
    if (sol.kind == SolutionKind::Unsolvable) {
        report.solvable = false;
        return report;
    }

    Vector v = project_out(reconstruct(sys, *sol.particular), p.psi);
    report.relative_residual = relative((A.apply_adjoint(v) - g).norm(), g.norm());
    report.particular = std::move(v);
    return report;
}

//
// decomposition A = B + F
//

Decomposition decompose(const Matrix& a, const SpacePtr& space, const Tolerances& tol) {
    if (!space)
        throw InvalidArgument("decompose: missing space");
    if (!a.square())
        throw DimensionError("decompose: matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             ", expected a square matrix");
    if (a.rows() != space->dim())
        throw DimensionError("decompose: matrix dimension " + std::to_string(a.rows()) +
                             " does not match space dimension " + std::to_string(space->dim()));

    oracle::DenseMatrix dense{a, space};
    const auto sv = oracle::singular_values(dense);

    // refuse to guess when a singular value sits near the threshold
    if (!sv.empty() && sv.front() > 0.0) {
        const double lo = tol.rank_tol * 1e-2 * sv.front();
        const double hi = tol.rank_tol * 1e2 * sv.front();
        for (std::size_t k = 0; k < sv.size(); ++k) {
            if (sv[k] > lo && sv[k] < hi) {
                std::ostringstream os;
                os << "decompose: nullity is ambiguous, singular value " << k << " = " << sv[k]
                   << " lies within two decades of rank_tol * sigma_max = " << tol.rank_tol * sv.front();
                throw NumericalError(os.str());
            }
        }
    }

    auto phi = orthonormalize(oracle::null_space(dense, tol), tol);
    auto psi = orthonormalize(oracle::adjoint_null_space(dense, tol), tol);
    canonicalize_basis(phi);
    canonicalize_basis(psi);
    if (phi.size() != psi.size())
        throw NumericalError("decompose: dim N(A) = " + std::to_string(phi.size()) +
                             " differs from dim N(A*) = " + std::to_string(psi.size()));

    std::vector<RankOnePair> pairs;
    pairs.reserve(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j)
        pairs.push_back({phi[j], psi[j]});
    FiniteRankOperator F(space, std::move(pairs));

    const Matrix f_matrix = oracle::materialize(F).entries;
    Matrix b_matrix = a - f_matrix;

    try {
        Isomorphism B(space, b_matrix, tol);
        DecompositionCertificate cert;
        cert.min_pivot = B.min_pivot();
        cert.max_pivot = B.max_pivot();
        cert.reconstruction_error = max_abs_difference(a, B.matrix() + f_matrix);
        cert.singular_values = sv;
        return Decomposition{std::move(dense), std::move(B), std::move(F), std::move(phi), std::move(psi),
                             std::move(cert)};
    } catch (const SingularMatrixError& e) {
        std::ostringstream os;
        os << "decompose: B = A - F failed isomorphism certification with estimated nullity " << phi.size()
           << " (smallest pivot " << e.min_pivot() << ", largest " << e.max_pivot()
           << "); the null spaces were likely misclassified by rank_tol";
        throw SingularMatrixError(os.str(), e.min_pivot(), e.max_pivot());
    }
}

Vector solve_via_decomposition(const Decomposition& dec, const Vector& f, const Tolerances& tol) {
    require_compatible(dec.A.space, f.space(), "solve_via_decomposition");

    // f = f1 + sum_j c_j psi_j with f1 in R(A)
    std::vector<Scalar> c;
    Vector f1 = f;
    for (const auto& psi : dec.psi) {
        c.push_back(inner_product(f, psi));
        f1.axpy(-c.back(), psi);
    }

    Vector u = project_out(oracle::min_norm_solve(dec.A, f1, tol), dec.phi);
    for (std::size_t j = 0; j < dec.phi.size(); ++j)
        u.axpy(-c[j], dec.phi[j]);

    const double residual = (dec.B.apply(u) - f).norm();
    if (residual > tol.residual_tol * f.norm()) {
        std::ostringstream os;
        os << "solve_via_decomposition: |Bu - f| = " << residual << " exceeds " << tol.residual_tol << " * |f|";
        throw NumericalError(os.str());
    }
    return u;
}

} // namespace fredholm
