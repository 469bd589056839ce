#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fredholm/alternative.hpp"
#include "fredholm/operators.hpp"

//
// Second-kind integral equations with degenerate kernels
//
//   u(x) + int_lo^hi k(x,y) u(y) dy = f(x),   k(x,y) = sum_i b_i(x) a_i(y),
//
// discretized by quadrature into the weighted coordinate space.
//
namespace fredholm::kernels {

enum class Rule { Trapezoid, GaussLegendre };

const char* to_string(Rule rule) noexcept;
/// "trapezoid" or "gauss-legendre"; throws InvalidArgument otherwise
Rule parse_rule(const std::string& name);

struct Quadrature {
    Rule rule = Rule::Trapezoid;
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const noexcept { return nodes.size(); }
};

/// Composite trapezoid rule on n >= 2 equispaced nodes.
Quadrature trapezoid(std::size_t n, double lo, double hi);
/// n-point Gauss-Legendre rule, nodes from Newton iteration on P_n.
Quadrature gauss_legendre(std::size_t n, double lo, double hi);
Quadrature make_quadrature(Rule rule, std::size_t n, double lo, double hi);

/// Built-in function generators evaluated at grid nodes.
struct Polynomial {
    /// c_0 + c_1 x + c_2 x^2 + ...
    std::vector<double> coeffs;
};
struct Sine {
    double frequency = 1.0;
    double scale = 1.0;
};
struct Cosine {
    double frequency = 1.0;
    double scale = 1.0;
};
struct Exponential {
    double rate = 1.0;
    double scale = 1.0;
};

/// Either explicit samples at the grid nodes or a generator.
using Function = std::variant<std::vector<Scalar>, Polynomial, Sine, Cosine, Exponential>;

std::vector<Scalar> sample(const Function& fn, std::span<const double> nodes);

/// One term b(x) a(y) of the kernel.
struct KernelTerm {
    Function a;
    Function b;
};

struct DegenerateKernel {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<KernelTerm> terms;
};

struct Discretization {
    SpacePtr space;
    FiniteRankOperator op;
};

///
/// Space with the quadrature weights and T with pairs (conj a_i, b_i), so that
/// (T u)_m = sum_k w_k k(x_m, y_k) u_k.
///
Discretization discretize(const DegenerateKernel& kernel, const Quadrature& q);

/// Solution samples are the report's `particular`.
AlternativeReport solve_integral_equation(const DegenerateKernel& kernel, const Quadrature& q,
                                          std::span<const Scalar> f, const Tolerances& tol = {});

} // namespace fredholm::kernels
