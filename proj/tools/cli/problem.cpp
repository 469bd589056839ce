#include "problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fredholm/error.hpp"

namespace fredholm::cli {

using json = nlohmann::json;
using Kind = ProblemError::Kind;

ProblemError::ProblemError(Kind kind, std::string field, const std::string& what)
    : std::runtime_error(field + ": " + what), kind_(kind), field_(std::move(field)) {}

namespace {

[[noreturn]] void malformed(const std::string& field, const std::string& what) {
    throw ProblemError(Kind::Malformed, field, what);
}

[[noreturn]] void mismatch(const std::string& field, const std::string& what) {
    throw ProblemError(Kind::Dimension, field, what);
}

std::string at(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

std::string dot(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

void only_keys(const json& obj, const std::string& field, const std::set<std::string>& allowed) {
    if (!obj.is_object())
        malformed(field, "expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key))
            malformed(dot(field, key), "unknown field");
}

const json& required(const json& obj, const std::string& field, const std::string& key) {
    if (!obj.contains(key))
        malformed(dot(field, key), "missing");
    return obj.at(key);
}

double real(const json& j, const std::string& field) {
    if (!j.is_number())
        malformed(field, "expected a number");
    return j.get<double>();
}

std::size_t count(const json& j, const std::string& field) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        malformed(field, "expected a non-negative integer");
    return j.get<std::size_t>();
}

// a number or an [re, im] pair
Scalar scalar(const json& j, const std::string& field) {
    if (j.is_number())
        return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    malformed(field, "expected a number or an [re, im] pair");
}

std::vector<Scalar> scalars(const json& j, const std::string& field) {
    if (!j.is_array())
        malformed(field, "expected an array");
    std::vector<Scalar> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(scalar(j[i], at(field, i)));
    return out;
}

Vector vector_of(const json& j, const std::string& field, const SpacePtr& space) {
    auto coords = scalars(j, field);
    if (coords.size() != space->dim())
        mismatch(field, "expected " + std::to_string(space->dim()) + " entries, got " + std::to_string(coords.size()));
    return Vector(space, std::move(coords));
}

Matrix matrix_of(const json& j, const std::string& field, std::optional<std::size_t> dim) {
    if (!j.is_array() || j.empty())
        malformed(field, "expected a non-empty array of rows");
    std::vector<std::vector<Scalar>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(scalars(j[i], at(field, i)));
        if (rows.back().size() != rows.front().size())
            mismatch(at(field, i), "row has " + std::to_string(rows.back().size()) + " entries, row 0 has " +
                                       std::to_string(rows.front().size()));
    }
    if (rows.size() != rows.front().size())
        mismatch(field, "matrix is " + std::to_string(rows.size()) + "x" + std::to_string(rows.front().size()) +
                            ", expected a square matrix");
    if (dim && rows.size() != *dim)
        mismatch(field, "matrix dimension " + std::to_string(rows.size()) + " does not match space.dim " +
                            std::to_string(*dim));
    return Matrix::from_rows(rows);
}

SpacePtr space_of(const json& j) {
    only_keys(j, "space", {"dim", "weights"});
    const std::size_t dim = count(required(j, "space", "dim"), "space.dim");
    if (dim == 0)
        malformed("space.dim", "must be positive");
    if (!j.contains("weights"))
        return Space::standard(dim);
    const auto& w = j.at("weights");
    if (!w.is_array())
        malformed("space.weights", "expected an array");
    if (w.size() != dim)
        mismatch("space.weights", "expected " + std::to_string(dim) + " entries, got " + std::to_string(w.size()));
    std::vector<double> weights;
    for (std::size_t i = 0; i < w.size(); ++i) {
        weights.push_back(real(w[i], at("space.weights", i)));
        if (!(weights.back() > 0.0))
            malformed(at("space.weights", i), "weights must be positive");
    }
    return Space::weighted(std::move(weights));
}

Tolerances tolerances_of(const json& j) {
    only_keys(j, "tolerances", {"rank_tol", "residual_tol", "ortho_tol"});
    Tolerances tol;
    if (j.contains("rank_tol"))
        tol.rank_tol = real(j.at("rank_tol"), "tolerances.rank_tol");
    if (j.contains("residual_tol"))
        tol.residual_tol = real(j.at("residual_tol"), "tolerances.residual_tol");
    if (j.contains("ortho_tol"))
        tol.ortho_tol = real(j.at("ortho_tol"), "tolerances.ortho_tol");
    try {
        tol.validate();
    } catch (const InvalidArgument& e) {
        malformed("tolerances", e.what());
    }
    return tol;
}

FiniteRankOperator operator_of(const json& j, const SpacePtr& space) {
    only_keys(j, "operator", {"finite_rank"});
    const auto& pairs = required(j, "operator", "finite_rank");
    if (!pairs.is_array())
        malformed("operator.finite_rank", "expected an array of {a, b} pairs");
    std::vector<RankOnePair> out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto field = at("operator.finite_rank", i);
        only_keys(pairs[i], field, {"a", "b"});
        out.push_back({vector_of(required(pairs[i], field, "a"), field + ".a", space),
                       vector_of(required(pairs[i], field, "b"), field + ".b", space)});
    }
    return FiniteRankOperator(space, std::move(out));
}

Isomorphism iso_of(const json& j, const SpacePtr& space, const Tolerances& tol) {
    if (j.is_string()) {
        if (j.get<std::string>() != "identity")
            malformed("iso", "expected \"identity\" or {\"matrix\": [...]}");
        return Isomorphism::identity(space);
    }
    only_keys(j, "iso", {"matrix"});
    return Isomorphism(space, matrix_of(required(j, "iso", "matrix"), "iso.matrix", space->dim()), tol);
}

// samples or {"polynomial": [...]} / {"sine": {...}} / {"cosine": {...}} / {"exponential": {...}}
kernels::Function function_of(const json& j, const std::string& field) {
    if (j.is_array())
        return scalars(j, field);
    if (!j.is_object() || j.size() != 1)
        malformed(field, "expected samples or one generator object");
    const auto& [name, args] = *j.items().begin();
    const auto sub = dot(field, name);
    if (name == "polynomial") {
        if (!args.is_array())
            malformed(sub, "expected an array of coefficients");
        std::vector<double> c;
        for (std::size_t i = 0; i < args.size(); ++i)
            c.push_back(real(args[i], at(sub, i)));
        return kernels::Polynomial{std::move(c)};
    }
    if (name == "sine" || name == "cosine") {
        only_keys(args, sub, {"frequency", "scale"});
        const double f = args.contains("frequency") ? real(args.at("frequency"), sub + ".frequency") : 1.0;
        const double s = args.contains("scale") ? real(args.at("scale"), sub + ".scale") : 1.0;
        if (name == "sine")
            return kernels::Sine{f, s};
        return kernels::Cosine{f, s};
    }
    if (name == "exponential") {
        only_keys(args, sub, {"rate", "scale"});
        const double r = args.contains("rate") ? real(args.at("rate"), sub + ".rate") : 1.0;
        const double s = args.contains("scale") ? real(args.at("scale"), sub + ".scale") : 1.0;
        return kernels::Exponential{r, s};
    }
    malformed(sub, "unknown generator (polynomial, sine, cosine, exponential)");
}

std::vector<Scalar> sampled(const kernels::Function& fn, const kernels::Quadrature& q, const std::string& field) {
    if (const auto* s = std::get_if<std::vector<Scalar>>(&fn); s && s->size() != q.size())
        mismatch(field, "expected " + std::to_string(q.size()) + " samples (kernel.n_nodes), got " +
                            std::to_string(s->size()));
    return kernels::sample(fn, q.nodes);
}

KernelProblem kernel_of(const json& j) {
    only_keys(j, "kernel", {"interval", "rule", "n_nodes", "terms"});
    const auto& iv = required(j, "kernel", "interval");
    if (!iv.is_array() || iv.size() != 2)
        malformed("kernel.interval", "expected [lo, hi]");
    const double lo = real(iv[0], "kernel.interval[0]");
    const double hi = real(iv[1], "kernel.interval[1]");
    if (!(lo < hi))
        malformed("kernel.interval", "expected lo < hi");

    const auto& rule_json = required(j, "kernel", "rule");
    if (!rule_json.is_string())
        malformed("kernel.rule", "expected \"trapezoid\" or \"gauss-legendre\"");
    kernels::Rule rule{};
    try {
        rule = kernels::parse_rule(rule_json.get<std::string>());
    } catch (const InvalidArgument&) {
        malformed("kernel.rule", "expected \"trapezoid\" or \"gauss-legendre\"");
    }
    const std::size_t n = count(required(j, "kernel", "n_nodes"), "kernel.n_nodes");
    if (n < (rule == kernels::Rule::Trapezoid ? 2u : 1u))
        malformed("kernel.n_nodes", "too few nodes for the rule");

    KernelProblem out;
    out.quadrature = kernels::make_quadrature(rule, n, lo, hi);
    out.kernel.lo = lo;
    out.kernel.hi = hi;
    const auto& terms = required(j, "kernel", "terms");
    if (!terms.is_array())
        malformed("kernel.terms", "expected an array of {a, b} terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto field = at("kernel.terms", i);
        only_keys(terms[i], field, {"a", "b"});
        auto a = function_of(required(terms[i], field, "a"), field + ".a");
        auto b = function_of(required(terms[i], field, "b"), field + ".b");
        sampled(a, out.quadrature, field + ".a");
        sampled(b, out.quadrature, field + ".b");
        out.kernel.terms.push_back({std::move(a), std::move(b)});
    }
    return out;
}

} // namespace

Problem parse_problem(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        malformed("<document>", e.what());
    }
    // "decomposition" is what cmd_decompose writes next to the round-trip sections
    only_keys(doc, "", {"space", "operator", "iso", "rhs", "kernel", "matrix", "tolerances", "decomposition"});

    Problem p;
    if (doc.contains("tolerances"))
        p.tolerances = tolerances_of(doc.at("tolerances"));

    const bool has_op = doc.contains("operator") || doc.contains("iso");
    const int forms = int(has_op) + int(doc.contains("kernel")) + int(doc.contains("matrix"));
    if (forms != 1)
        malformed("<document>", "expected exactly one of operator+iso, kernel, matrix");

    try {
        if (doc.contains("kernel")) {
            if (doc.contains("space"))
                malformed("space", "not allowed with a kernel section (the quadrature defines the space)");
            p.kernel = kernel_of(doc.at("kernel"));
            p.space = kernels::discretize(p.kernel->kernel, p.kernel->quadrature).space;
            if (doc.contains("rhs")) {
                auto f = function_of(doc.at("rhs"), "rhs");
                p.rhs = Vector(p.space, sampled(f, p.kernel->quadrature, "rhs"));
            }
            return p;
        }

        if (doc.contains("matrix")) {
            std::optional<std::size_t> dim;
            if (doc.contains("space")) {
                p.space = space_of(doc.at("space"));
                dim = p.space->dim();
            }
            p.matrix = matrix_of(doc.at("matrix"), "matrix", dim);
            if (!p.space)
                p.space = Space::standard(p.matrix->rows());
        } else {
            p.space = space_of(required(doc, "", "space"));
            auto F = operator_of(required(doc, "", "operator"), p.space);
            auto B = iso_of(required(doc, "", "iso"), p.space, p.tolerances);
            p.op.emplace(std::move(B), std::move(F));
        }
        if (doc.contains("rhs"))
            p.rhs = vector_of(doc.at("rhs"), "rhs", p.space);
    } catch (const DimensionError& e) {
        mismatch("<document>", e.what());
    } catch (const InvalidArgument& e) {
        malformed("<document>", e.what());
    }
    return p;
}

Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        malformed(path, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

} // namespace fredholm::cli
