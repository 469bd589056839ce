// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "fredholm/alternative.hpp"
#include "fredholm/kernels.hpp"
#include "fredholm/oracle.hpp"
#include "fredholm/reduction.hpp"
#include "fredholm/testing/generators.hpp"

using namespace fredholm;
using namespace fredholm::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

SolutionKind verdict_of(const AlternativeReport& r) {
    if (!r.solvable)
        return SolutionKind::Unsolvable;
    return r.n == 0 ? SolutionKind::Unique : SolutionKind::Family;
}

double max_of(const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs)
        m = std::max(m, x);
    return m;
}

// Criteria 1-3 share one batch of 500 instances with right-hand sides.
struct Batch {
    std::size_t instances = 0;
    std::size_t dim_failures = 0;
    std::size_t verdict_failures = 0;
    std::size_t residual_failures = 0;
    std::size_t criterion_failures = 0;
    std::size_t degenerate = 0;
    std::size_t unsolvable = 0;
    double worst_residual = 0.0;
    double analyze_seconds = 0.0;
};

Batch run_batch() {
    Batch b;
    Rng rng(20240501);
    const Tolerances tol;
    for (int i = 0; i < 500; ++i) {
        const auto inst = random_instance(rng, 5, 50, 5);
        const auto f = random_rhs(rng, inst);
        ++b.instances;

        const auto t0 = Clock::now();
        const auto rep = analyze(inst.A, tol);
        const auto dense = oracle::materialize(inst.A);
        const std::size_t nullity = oracle::null_space(dense, tol).size();
        b.analyze_seconds += seconds_since(t0);
        if (rep.phi.size() != rep.psi.size() || rep.phi.size() != nullity)
            ++b.dim_failures;
        b.degenerate += rep.n > 0 ? 1 : 0;

        const auto r = solve(inst.A, f, tol);
        const auto oracle_kind = oracle::dense_solve(dense, f, tol).kind;
        if (verdict_of(r) != oracle_kind)
            ++b.verdict_failures;
        if (r.solvable) {
            const double res = (inst.A.apply(*r.particular) - f).norm();
            b.worst_residual = std::max(b.worst_residual, res / f.norm());
            if (res > 1e-8 * f.norm())
                ++b.residual_failures;
        } else {
            ++b.unsolvable;
        }

        const bool criterion = max_of(r.solvability_residuals) <= 1e-8 * f.norm();
        if (criterion != r.solvable || criterion != (oracle_kind != SolutionKind::Unsolvable))
            ++b.criterion_failures;
    }
    return b;
}

Outcome criterion_1(const Batch& b) {
    return {b.dim_failures == 0 && b.analyze_seconds < 30.0,
            fmt("%zu instances (%zu degenerate), %zu mismatches, %.2f s", b.instances, b.degenerate, b.dim_failures,
                b.analyze_seconds)};
}

Outcome criterion_2(const Batch& b) {
    return {b.verdict_failures == 0 && b.residual_failures == 0,
            fmt("%zu verdict mismatches, %zu residual failures, worst |Au-f|/|f| = %.3e", b.verdict_failures,
                b.residual_failures, b.worst_residual)};
}

Outcome criterion_3(const Batch& b) {
    return {b.criterion_failures == 0, fmt("%zu disagreements over %zu instances (%zu unsolvable)",
                                           b.criterion_failures, b.instances, b.unsolvable)};
}

Outcome criterion_4() {
    Rng rng(4004);
    const Tolerances tol;
    double worst_roundtrip = 0.0;
    double worst_transfer = 0.0;
    std::size_t null_vectors = 0;
    for (int i = 0; i < 200; ++i) {
        const auto inst = random_instance(rng, 5, 50, 5);
        const auto f = random_rhs(rng, inst);
        const auto T = compose_with_inverse(inst.A.F, inst.A.B);

        const auto sys = build_system(T, f, tol);
        const auto sol = solve_system(sys, tol);
        if (sol.particular) {
            const auto back = extract_coefficients(sys, reconstruct(sys, *sol.particular));
            for (std::size_t k = 0; k < back.size(); ++k)
                worst_roundtrip = std::max(worst_roundtrip, std::abs(back[k] - (*sol.particular)[k]));
        }

        const auto hom = build_system(T, Vector(inst.space), tol);
        for (const auto& c : solve_system(hom, tol).null_basis) {
            const auto w = reconstruct(hom, c);
            const auto back = extract_coefficients(hom, w);
            for (std::size_t k = 0; k < back.size(); ++k)
                worst_roundtrip = std::max(worst_roundtrip, std::abs(back[k] - c[k]));
            worst_transfer = std::max(worst_transfer, (w + T.apply(w)).norm());
            ++null_vectors;
        }
    }
    return {worst_roundtrip <= 1e-10 && worst_transfer <= 1e-10,
            fmt("worst round trip %.3e, worst |w+Tw| %.3e over %zu null vectors", worst_roundtrip, worst_transfer,
                null_vectors)};
}

Outcome criterion_5() {
    Rng rng(5005);
    std::size_t violations = 0;
    std::size_t nonzero_nullity = 0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(5, 50)(rng);
        const std::size_t r = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(0, r)(rng);
        const auto flavor = random_flavor(rng);
        auto space = random_space(rng, n, flavor.weighted);
        const auto B = random_isomorphism(rng, space, flavor.complex);
        const auto T0 = degenerate_second_kind(rng, space, r, k, flavor.complex);
        const auto F = times_isomorphism(T0, B, rng, std::bernoulli_distribution(0.5)(rng));
        const auto T = compose_with_inverse(F, B);

        const std::size_t rank_t = rank(T);
        const std::size_t null_t = null_space_second_kind(T).size();
        if (rank_t != rank(adjoint(T)) || null_t > rank_t)
            ++violations;
        nonzero_nullity += null_t > 0 ? 1 : 0;
    }
    return {violations == 0, fmt("%zu violations over 500 operators (%zu with nontrivial N(I+T))", violations,
                                 nonzero_nullity)};
}

Outcome criterion_6() {
    Rng rng(6006);
    const Tolerances tol;
    std::size_t failures = 0;
    double worst_ratio = 1.0;
    double worst_reconstruction = 0.0;
    double worst_residual = 0.0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(5, 40)(rng);
        const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        const auto flavor = random_flavor(rng);
        auto space = random_space(rng, n, flavor.weighted);
        const auto a = random_singular_matrix(rng, n, k, flavor.complex);

        const auto dec = decompose(a, space, tol);
        // independent reconstruction check on the materialized pieces
        const auto sum = oracle::materialize(dec.B).entries + oracle::materialize(dec.F).entries;
        const double recon = max_abs_difference(sum, a);
        const double ratio = dec.B.min_pivot() / dec.B.max_pivot();

        const auto f = random_vector(rng, space, flavor.complex);
        const auto u = solve_via_decomposition(dec, f, tol);
        const double res = (dec.B.apply(u) - f).norm() / f.norm();

        worst_ratio = std::min(worst_ratio, ratio);
        worst_reconstruction = std::max(worst_reconstruction, recon);
        worst_residual = std::max(worst_residual, res);
        if (dec.n() != k || !(ratio > 1e-10) || recon > 1e-12 || res > 1e-8)
            ++failures;
    }
    return {failures == 0, fmt("%zu failures; worst pivot ratio %.3e, |A-(B+F)| %.3e, |Bu-f|/|f| %.3e", failures,
                               worst_ratio, worst_reconstruction, worst_residual)};
}

Outcome criterion_7() {
    Rng rng(7007);
    double worst = 0.0;
    std::size_t entries = 0;
    for (int i = 0; i < 100; ++i) {
        const auto inst = random_instance(rng, 5, 50, 5);
        const auto T = compose_with_inverse(inst.A.F, inst.A.B);
        const auto f = random_vector(rng, inst.space, inst.flavor.complex);
        const auto sys = build_system(T, f);
        const auto adj = build_adjoint_system(T, f);
        for (std::size_t r = 0; r < sys.size(); ++r)
            for (std::size_t c = 0; c < sys.size(); ++c) {
                worst = std::max(worst, std::abs(adj.t(r, c) - std::conj(sys.t(c, r))));
                ++entries;
            }
    }
    return {worst <= 1e-14, fmt("worst |t*_ij - conj(t_ji)| = %.3e over %zu entries", worst, entries)};
}

double three_quarters_error(const kernels::Quadrature& q) {
    const kernels::DegenerateKernel k{0.0, 1.0, {{kernels::Polynomial{{0.0, 1.0}}, kernels::Polynomial{{0.0, 1.0}}}}};
    const std::vector<Scalar> f(q.nodes.begin(), q.nodes.end());
    const auto r = kernels::solve_integral_equation(k, q, f);
    double err = 0.0;
    for (std::size_t m = 0; m < q.size(); ++m)
        err = std::max(err, std::abs((*r.particular)[m] - 0.75 * q.nodes[m]));
    return err;
}

Outcome criterion_8() {
    bool pass = true;
    double worst_gl = 0.0;
    for (std::size_t n : {4u, 5u, 6u, 8u, 12u, 16u, 32u, 64u})
        worst_gl = std::max(worst_gl, three_quarters_error(kernels::gauss_legendre(n, 0.0, 1.0)));
    pass = pass && worst_gl <= 1e-12;

    std::vector<double> errors;
    for (std::size_t n : {11u, 21u, 41u, 81u})
        errors.push_back(three_quarters_error(kernels::trapezoid(n, 0.0, 1.0)));
    std::string orders;
    for (std::size_t k = 1; k < errors.size(); ++k) {
        const double p = std::log2(errors[k - 1] / errors[k]);
        pass = pass && std::abs(p - 2.0) <= 0.2;
        orders += fmt(k == 1 ? "%.3f" : ", %.3f", p);
    }
    return {pass, fmt("Gauss-Legendre N>=4 max error %.3e; trapezoid orders ", worst_gl) + orders};
}

Outcome criterion_9() {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(FREDHOLM_PROBLEMS_DIR))
        if (e.path().extension() == ".json")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());

    std::size_t runs = 0;
    std::size_t nondeterministic = 0;
    std::size_t verify_failures = 0;
    const auto once = [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return std::to_string(code) + "\n" + out.str() + "\n" + err.str();
    };
    for (const auto& file : files) {
        for (const auto* cmd : {"solve", "analyze", "decompose", "verify"})
            for (const auto* format : {"text", "json"}) {
                const std::vector<std::string> args{cmd, file.string(), "--format", format};
                ++runs;
                if (once(args) != once(args))
                    ++nondeterministic;
            }
        std::ostringstream sink;
        if (cli::run({"verify", file.string()}, sink, sink) != 0)
            ++verify_failures;
    }
    return {!files.empty() && nondeterministic == 0 && verify_failures == 0,
            fmt("%zu problems, %zu paired runs, %zu differing, %zu verify failures", files.size(), runs,
                nondeterministic, verify_failures)};
}

} // namespace

int main() {
    const auto batch_start = Clock::now();
    const Batch batch = run_batch();
    const double batch_seconds = seconds_since(batch_start);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 dimension equality", [&] { return criterion_1(batch); }},
        {"2 alternative classification", [&] { return criterion_2(batch); }},
        {"3 solvability criterion", [&] { return criterion_3(batch); }},
        {"4 reduced-system equivalence", criterion_4},
        {"5 rank facts", criterion_5},
        {"6 decomposition", criterion_6},
        {"7 adjoint-matrix identity", criterion_7},
        {"8 integral equation", criterion_8},
        {"9 CLI determinism", criterion_9},
    };

    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed (shared 500-instance batch %.2f s)\n", int(criteria.size()) - failed,
                criteria.size(), batch_seconds);
    return failed == 0 ? 0 : 1;
}
