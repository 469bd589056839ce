#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "fredholm/error.hpp"
#include "fredholm/oracle.hpp"
#include "fredholm/reduction.hpp"
#include "fredholm/testing/generators.hpp"

namespace fredholm::cli {

namespace {

double relative(double x, double scale) { return scale > 0.0 ? x / scale : x; }

double max_of(const std::vector<double>& xs) {
    double m = 0.0;
    for (double x : xs)
        m = std::max(m, x);
    return m;
}

FredholmOperator operator_for(const Problem& p) {
    if (p.op)
        return *p.op;
    if (p.kernel)
        return FredholmOperator(Isomorphism::identity(p.space),
                                kernels::discretize(p.kernel->kernel, p.kernel->quadrature).op);
    auto dec = decompose(*p.matrix, p.space, p.tolerances);
    return FredholmOperator(std::move(dec.B), std::move(dec.F));
}

std::string headline(const AlternativeReport& r) {
    std::string h = std::string("case=") + to_string(r.alternative) + " n=" + std::to_string(r.n);
    if (r.has_rhs)
        h += r.solvable ? " status=solvable" : " status=unsolvable";
    return h;
}

void add_bases(Node& body, const AlternativeReport& r) {
    body.set("phi", Node::basis(r.phi));
    body.set("psi", Node::basis(r.psi));
}

} // namespace

Outcome cmd_solve(const Problem& p) {
    if (!p.rhs)
        throw ProblemError(ProblemError::Kind::Malformed, "rhs", "missing (solve needs a right-hand side)");
    const auto& f = *p.rhs;
    const auto A = operator_for(p);
    const auto r = p.kernel ? kernels::solve_integral_equation(p.kernel->kernel, p.kernel->quadrature, f.coords(),
                                                               p.tolerances)
                            : solve(A, f, p.tolerances);

    Outcome out;
    out.report.headline = headline(r);
    auto& body = out.report.body;
    body.set("case", Node::text(to_string(r.alternative)));
    body.set("n", Node::integer(static_cast<long long>(r.n)));
    body.set("status", Node::text(r.solvable ? "solvable" : "unsolvable"));
    body.set("solvability_residuals", Node::reals(r.solvability_residuals));
    body.set("solvability_limit", Node::real(p.tolerances.residual_tol * f.norm()));
    if (p.kernel)
        body.set("nodes", Node::reals(p.kernel->quadrature.nodes));
    if (r.particular) {
        body.set("particular", Node::vector(*r.particular));
        const double res = (A.apply(*r.particular) - f).norm();
        body.set("residual", Node::real(res));
        body.set("relative_residual", Node::real(relative(res, f.norm())));
    }
    body.set("family", Node::text(r.family.describe()));
    add_bases(body, r);
    out.code = r.solvable ? Ok : Unsolvable;
    return out;
}

Outcome cmd_analyze(const Problem& p) {
    const auto r = analyze(operator_for(p), p.tolerances);
    Outcome out;
    out.report.headline = headline(r);
    auto& body = out.report.body;
    body.set("case", Node::text(to_string(r.alternative)));
    body.set("n", Node::integer(static_cast<long long>(r.n)));
    if (p.kernel)
        body.set("nodes", Node::reals(p.kernel->quadrature.nodes));
    body.set("family", Node::text(r.family.describe()));
    add_bases(body, r);
    return out;
}

Outcome cmd_decompose(const Problem& p) {
    if (!p.matrix)
        throw ProblemError(ProblemError::Kind::Malformed, "matrix", "missing (decompose needs a matrix section)");
    const auto dec = decompose(*p.matrix, p.space, p.tolerances);
    const auto& cert = dec.certificate;
    const bool certified = cert.min_pivot > p.tolerances.rank_tol * cert.max_pivot;

    Outcome out;
    out.report.headline = "n=" + std::to_string(dec.n()) + (certified ? " certified=yes" : " certified=no");
    auto& body = out.report.body;

    // the first sections form a problem file accepted by solve/analyze/verify
    Node space = Node::map();
    space.set("dim", Node::integer(static_cast<long long>(p.space->dim())));
    if (!p.space->has_unit_weights())
        space.set("weights", Node::reals(p.space->weights()));
    body.set("space", std::move(space));

    Node pairs = Node::list();
    for (std::size_t j = 0; j < dec.n(); ++j) {
        Node pair = Node::map();
        pair.set("a", Node::vector(dec.phi[j]));
        pair.set("b", Node::vector(dec.psi[j]));
        pairs.push(std::move(pair));
    }
    Node op = Node::map();
    op.set("finite_rank", std::move(pairs));
    body.set("operator", std::move(op));

    Node iso = Node::map();
    iso.set("matrix", Node::rows(dec.B.matrix()));
    body.set("iso", std::move(iso));
    if (p.rhs)
        body.set("rhs", Node::vector(*p.rhs));

    Node info = Node::map();
    info.set("n", Node::integer(static_cast<long long>(dec.n())));
    info.set("certified", Node::boolean(certified));
    info.set("min_pivot", Node::real(cert.min_pivot));
    info.set("max_pivot", Node::real(cert.max_pivot));
    info.set("reconstruction_error", Node::real(cert.reconstruction_error));
    info.set("singular_values", Node::reals(cert.singular_values));
    if (p.rhs) {
        const auto u = solve_via_decomposition(dec, *p.rhs, p.tolerances);
        info.set("b_solution", Node::vector(u));
        info.set("b_relative_residual", Node::real(relative((dec.B.apply(u) - *p.rhs).norm(), p.rhs->norm())));
    }
    body.set("decomposition", std::move(info));
    return out;
}

//
// verify
//

namespace {

struct Check {
    std::string name;
    bool pass = true;
    double value = 0.0;
    double limit = 0.0;
    bool integral = false;
};

std::vector<Check> run_checks(const FredholmOperator& A, const std::optional<Vector>& rhs, const Tolerances& tol) {
    std::vector<Check> checks;
    const auto integer_check = [&](std::string name, std::size_t mismatches) {
        checks.push_back({std::move(name), mismatches == 0, static_cast<double>(mismatches), 0.0, true});
    };
    const auto bounded = [&](std::string name, double value, double limit) {
        checks.push_back({std::move(name), value <= limit, value, limit});
    };
    const auto gap = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };

    const auto report = analyze(A, tol);
    const auto dense = oracle::materialize(A);
    const auto dense_adj = dense.adjoint();
    const auto oracle_null = oracle::null_space(dense, tol);
    const auto oracle_adj_null = oracle::adjoint_null_space(dense, tol);
    integer_check("nullity_equality", gap(report.phi.size(), report.psi.size()) +
                                          gap(report.phi.size(), oracle_null.size()) +
                                          gap(report.psi.size(), oracle_null.size()) +
                                          gap(oracle_null.size(), oracle::null_space(dense_adj, tol).size()));

    const auto T = compose_with_inverse(A.F, A.B);
    const std::size_t rank_t = rank(T, tol);
    integer_check("rank_adjoint",
                  gap(rank_t, rank(adjoint(T), tol)) + gap(oracle::rank(dense, tol), oracle::rank(dense_adj, tol)));
    const std::size_t second_kind_nullity = null_space_second_kind(T, tol).size();
    integer_check("nullity_bound", second_kind_nullity > rank_t ? second_kind_nullity - rank_t : 0);

    bounded("null_space_distance",
            std::max(oracle::subspace_distance(report.phi, oracle_null),
                     oracle::subspace_distance(report.psi, oracle_adj_null)),
            tol.residual_tol);

    const Vector zero(A.space());
    const auto homogeneous = build_system(T, zero, tol);
    const auto adjoint_sys = build_adjoint_system(T, zero, tol);
    double adj_gap = 0.0;
    for (std::size_t i = 0; i < homogeneous.size(); ++i)
        for (std::size_t j = 0; j < homogeneous.size(); ++j)
            adj_gap = std::max(adj_gap, std::abs(adjoint_sys.t(i, j) - std::conj(homogeneous.t(j, i))));
    bounded("adjoint_matrix", adj_gap, 1e-14);

    double transfer = 0.0;
    for (const auto& c : solve_system(homogeneous, tol).null_basis) {
        const auto w = reconstruct(homogeneous, c);
        transfer = std::max(transfer, (w + T.apply(w)).norm());
    }
    bounded("null_transfer", transfer, 1e-10);

    if (!rhs)
        return checks;
    const auto& f = *rhs;

    const auto sys = build_system(T, f, tol);
    const auto sol = solve_system(sys, tol);
    double roundtrip = 0.0;
    if (sol.particular) {
        const auto back = extract_coefficients(sys, reconstruct(sys, *sol.particular));
        double scale = 1.0;
        for (std::size_t k = 0; k < back.size(); ++k) {
            roundtrip = std::max(roundtrip, std::abs(back[k] - (*sol.particular)[k]));
            scale = std::max(scale, std::abs((*sol.particular)[k]));
        }
        roundtrip /= scale;
    }
    bounded("coefficient_roundtrip", roundtrip, 1e-10);

    const auto r = solve(A, f, tol);
    const auto oracle_verdict = oracle::dense_solve(dense, f, tol).kind;
    const auto verdict = !r.solvable ? SolutionKind::Unsolvable : r.n == 0 ? SolutionKind::Unique : SolutionKind::Family;
    integer_check("verdict_match", verdict == oracle_verdict ? 0 : 1);

    const double criterion = relative(max_of(r.solvability_residuals), f.norm());
    checks.push_back({"solvability_criterion", r.solvable == (criterion <= tol.residual_tol), criterion,
                      tol.residual_tol});

    if (r.particular)
        bounded("residual", relative((A.apply(*r.particular) - f).norm(), f.norm()), tol.residual_tol);
    return checks;
}

void add_decomposition_checks(std::vector<Check>& checks, const Problem& p) {
    const auto dec = decompose(*p.matrix, p.space, p.tolerances);
    const auto& cert = dec.certificate;
    checks.push_back({"certified_pivots", cert.min_pivot > p.tolerances.rank_tol * cert.max_pivot,
                      relative(cert.min_pivot, cert.max_pivot), p.tolerances.rank_tol});
    checks.push_back({"reconstruction", cert.reconstruction_error <= 1e-12, cert.reconstruction_error, 1e-12});
    if (p.rhs) {
        const auto u = solve_via_decomposition(dec, *p.rhs, p.tolerances);
        const double res = relative((dec.B.apply(u) - *p.rhs).norm(), p.rhs->norm());
        checks.push_back({"decomposition_solve", res <= p.tolerances.residual_tol, res, p.tolerances.residual_tol});
    }
}

Node number(double x, bool integral) {
    return integral ? Node::integer(static_cast<long long>(x)) : Node::real(x);
}

} // namespace

Outcome cmd_verify(const Problem& p) {
    std::vector<Check> checks;
    if (p.matrix)
        add_decomposition_checks(checks, p);
    auto more = run_checks(operator_for(p), p.rhs, p.tolerances);
    checks.insert(checks.end(), more.begin(), more.end());

    Outcome out;
    std::size_t failed = 0;
    Node table = Node::map();
    for (const auto& c : checks) {
        failed += c.pass ? 0 : 1;
        Node row = Node::row();
        row.set("status", Node::text(c.pass ? "PASS" : "FAIL"));
        row.set("value", number(c.value, c.integral));
        row.set("limit", number(c.limit, c.integral));
        table.set(c.name, std::move(row));
    }
    out.report.headline = "checks=" + std::to_string(checks.size()) + " failed=" + std::to_string(failed) +
                          (failed == 0 ? " status=PASS" : " status=FAIL");
    out.report.body.set("status", Node::text(failed == 0 ? "PASS" : "FAIL"));
    out.report.body.set("checks", std::move(table));
    out.code = failed == 0 ? Ok : VerifyFailed;
    return out;
}

Outcome cmd_verify_random(std::size_t count, std::uint64_t seed, const Tolerances& tol) {
    struct Tally {
        std::size_t runs = 0;
        std::size_t failures = 0;
        double worst = 0.0;
        double limit = 0.0;
        bool integral = false;
    };
    std::vector<std::string> order;
    std::map<std::string, Tally> tally;

    testing::Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const auto inst = testing::random_instance(rng, 5, 50, 5);
        const auto f = testing::random_rhs(rng, inst);
        for (const auto& c : run_checks(inst.A, f, tol)) {
            auto [it, fresh] = tally.try_emplace(c.name);
            if (fresh)
                order.push_back(c.name);
            auto& t = it->second;
            ++t.runs;
            t.failures += c.pass ? 0 : 1;
            t.worst = std::max(t.worst, c.value);
            t.limit = c.limit;
            t.integral = c.integral;
        }
    }

    Outcome out;
    std::size_t failed = 0;
    Node table = Node::map();
    for (const auto& name : order) {
        const auto& t = tally.at(name);
        failed += t.failures;
        Node row = Node::row();
        row.set("status", Node::text(t.failures == 0 ? "PASS" : "FAIL"));
        row.set("runs", Node::integer(static_cast<long long>(t.runs)));
        row.set("failures", Node::integer(static_cast<long long>(t.failures)));
        row.set("worst", number(t.worst, t.integral));
        row.set("limit", number(t.limit, t.integral));
        table.set(name, std::move(row));
    }
    out.report.headline = "random=" + std::to_string(count) + " seed=" + std::to_string(seed) +
                          (failed == 0 ? " status=PASS" : " status=FAIL");
    out.report.body.set("status", Node::text(failed == 0 ? "PASS" : "FAIL"));
    out.report.body.set("instances", Node::integer(static_cast<long long>(count)));
    out.report.body.set("seed", Node::integer(static_cast<long long>(seed)));
    out.report.body.set("checks", std::move(table));
    out.code = failed == 0 ? Ok : VerifyFailed;
    return out;
}

//
// command line
//

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fredholm alternative solver for A = B + F (isomorphism plus finite rank)", "fredholm"};
    app.require_subcommand(1);

    std::string input;
    std::string format = "text";
    std::optional<double> tol_override;
    std::string output;
    std::size_t random_count = 0;
    std::uint64_t seed = 0;

    const auto common = [&](CLI::App* sub, bool input_required) {
        auto* opt = sub->add_option("input", input, "problem file (JSON)");
        if (input_required)
            opt->required();
        sub->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--tol", tol_override, "override residual_tol")->check(CLI::PositiveNumber);
        sub->add_option("--output", output, "write the report to this path instead of stdout");
    };
    auto* solve_cmd = app.add_subcommand("solve", "solve A u = f and report the alternative");
    common(solve_cmd, true);
    auto* analyze_cmd = app.add_subcommand("analyze", "null spaces of A and A*");
    common(analyze_cmd, true);
    auto* decompose_cmd = app.add_subcommand("decompose", "split a dense matrix into B + F");
    common(decompose_cmd, true);
    auto* verify_cmd = app.add_subcommand("verify", "check the pipeline against the dense oracle");
    common(verify_cmd, false);
    auto* random_opt = verify_cmd->add_option("--random", random_count, "number of seeded random instances");
    verify_cmd->add_option("--seed", seed, "generator seed for --random")->needs(random_opt);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return Malformed;
    }

    Outcome result;
    try {
        if (verify_cmd->parsed() && random_count > 0) {
            if (!input.empty())
                throw ProblemError(ProblemError::Kind::Malformed, "input", "not allowed together with --random");
            Tolerances tol;
            if (tol_override)
                tol.residual_tol = *tol_override;
            result = cmd_verify_random(random_count, seed, tol);
        } else {
            if (input.empty())
                throw ProblemError(ProblemError::Kind::Malformed, "input", "missing (give a problem file or --random N)");
            auto problem = load_problem(input);
            if (tol_override)
                problem.tolerances.residual_tol = *tol_override;
            if (solve_cmd->parsed())
                result = cmd_solve(problem);
            else if (analyze_cmd->parsed())
                result = cmd_analyze(problem);
            else if (decompose_cmd->parsed())
                result = cmd_decompose(problem);
            else
                result = cmd_verify(problem);
        }
    } catch (const ProblemError& e) {
        err << "fredholm: error: " << e.what() << '\n';
        return e.kind() == ProblemError::Kind::Dimension ? DimensionMismatch : Malformed;
    } catch (const DimensionError& e) {
        err << "fredholm: dimension error: " << e.what() << '\n';
        return DimensionMismatch;
    } catch (const InvalidArgument& e) {
        err << "fredholm: error: " << e.what() << '\n';
        return Malformed;
    } catch (const Error& e) {
        err << "fredholm: numerical failure: " << e.what() << '\n';
        return NumericalFailure;
    }

    const bool json = format == "json";
    if (output.empty()) {
        render(result.report, json, out);
    } else {
        std::ofstream file(output, std::ios::binary);
        if (!file) {
            err << "fredholm: error: --output: cannot write " << output << '\n';
            return Malformed;
        }
        render(result.report, json, file);
    }
    return result.code;
}

} // namespace fredholm::cli
