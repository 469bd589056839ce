#include "fredholm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fredholm/error.hpp"

namespace fredholm::kernels {

const char* to_string(Rule rule) noexcept {
    return rule == Rule::Trapezoid ? "trapezoid" : "gauss-legendre";
}

Rule parse_rule(const std::string& name) {
    if (name == "trapezoid")
        return Rule::Trapezoid;
    if (name == "gauss-legendre")
        return Rule::GaussLegendre;
    throw InvalidArgument("unknown quadrature rule '" + name + "' (expected trapezoid or gauss-legendre)");
}

namespace {

void check_interval(double lo, double hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw InvalidArgument("quadrature interval must satisfy lo < hi");
}

} // namespace

Quadrature trapezoid(std::size_t n, double lo, double hi) {
    check_interval(lo, hi);
    if (n < 2)
        throw InvalidArgument("trapezoid rule needs at least 2 nodes");
    Quadrature q{Rule::Trapezoid, lo, hi, std::vector<double>(n), std::vector<double>(n)};
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t k = 0; k < n; ++k) {
        q.nodes[k] = k + 1 == n ? hi : lo + static_cast<double>(k) * h;
        q.weights[k] = (k == 0 || k + 1 == n) ? 0.5 * h : h;
    }
    return q;
}

Quadrature gauss_legendre(std::size_t n, double lo, double hi) {
    check_interval(lo, hi);
    if (n < 1)
        throw InvalidArgument("Gauss-Legendre rule needs at least 1 node");
    Quadrature q{Rule::GaussLegendre, lo, hi, std::vector<double>(n), std::vector<double>(n)};

    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Tricomi initial guess for the (i+1)-th largest root of P_n
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-14)
                break;
        }
        // recompute the derivative at the converged root
        double p0 = 1.0;
        double p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double kd = static_cast<double>(k);
            const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
            p0 = p1;
            p1 = p2;
        }
        dp = nd * (x * p1 - p0) / (x * x - 1.0);

        // roots come out in descending order; store ascending
        const std::size_t slot = n - 1 - i;
        q.nodes[slot] = mid + half * x;
        q.weights[slot] = half * 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return q;
}

Quadrature make_quadrature(Rule rule, std::size_t n, double lo, double hi) {
    return rule == Rule::Trapezoid ? trapezoid(n, lo, hi) : gauss_legendre(n, lo, hi);
}

std::vector<Scalar> sample(const Function& fn, std::span<const double> nodes) {
    struct Sampler {
        std::span<const double> nodes;

        std::vector<Scalar> operator()(const std::vector<Scalar>& samples) const {
            if (samples.size() != nodes.size())
                throw DimensionError("function has " + std::to_string(samples.size()) + " samples, grid has " +
                                     std::to_string(nodes.size()) + " nodes");
            return samples;
        }
        std::vector<Scalar> operator()(const Polynomial& p) const {
            std::vector<Scalar> out;
            for (double x : nodes) {
                double acc = 0.0;
                for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it)
                    acc = acc * x + *it;
                out.emplace_back(acc);
            }
            return out;
        }
        std::vector<Scalar> operator()(const Sine& s) const {
            std::vector<Scalar> out;
            for (double x : nodes)
                out.emplace_back(s.scale * std::sin(s.frequency * x));
            return out;
        }
        std::vector<Scalar> operator()(const Cosine& c) const {
            std::vector<Scalar> out;
            for (double x : nodes)
                out.emplace_back(c.scale * std::cos(c.frequency * x));
            return out;
        }
        std::vector<Scalar> operator()(const Exponential& e) const {
            std::vector<Scalar> out;
            for (double x : nodes)
                out.emplace_back(e.scale * std::exp(e.rate * x));
            return out;
        }
    };
    return std::visit(Sampler{nodes}, fn);
}

Discretization discretize(const DegenerateKernel& kernel, const Quadrature& q) {
    if (kernel.lo != q.lo || kernel.hi != q.hi)
        throw DimensionError("kernel interval does not match the quadrature interval");
    auto space = Space::weighted(q.weights);

    std::vector<RankOnePair> pairs;
    pairs.reserve(kernel.terms.size());
    for (const auto& term : kernel.terms) {
        // (u, conj a)_W = sum_k w_k a(y_k) u_k
        auto a = sample(term.a, q.nodes);
        for (auto& x : a)
            x = std::conj(x);
        pairs.push_back({Vector(space, std::move(a)), Vector(space, sample(term.b, q.nodes))});
    }
    return {space, FiniteRankOperator(space, std::move(pairs))};
}

AlternativeReport solve_integral_equation(const DegenerateKernel& kernel, const Quadrature& q,
                                          std::span<const Scalar> f, const Tolerances& tol) {
    auto disc = discretize(kernel, q);
    if (f.size() != q.size())
        throw DimensionError("right-hand side has " + std::to_string(f.size()) + " samples, grid has " +
                             std::to_string(q.size()) + " nodes");
    const FredholmOperator A(Isomorphism::identity(disc.space), disc.op);
    return solve(A, Vector(disc.space, std::vector<Scalar>(f.begin(), f.end())), tol);
}

} // namespace fredholm::kernels
