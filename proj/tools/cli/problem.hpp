#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fredholm/alternative.hpp"
#include "fredholm/kernels.hpp"
#include "fredholm/matrix.hpp"
#include "fredholm/space.hpp"

namespace fredholm::cli {

/// Input failure tied to a field of the problem file, e.g. "operator.finite_rank[1].b".
class ProblemError : public std::runtime_error {
public:
    enum class Kind { Malformed, Dimension };

    ProblemError(Kind kind, std::string field, const std::string& what);

    Kind kind() const noexcept { return kind_; }
    const std::string& field() const noexcept { return field_; }

private:
    Kind kind_;
    std::string field_;
};

struct KernelProblem {
    kernels::DegenerateKernel kernel;
    kernels::Quadrature quadrature;
};

///
/// One parsed problem file. Exactly one of `op`, `kernel`, `matrix` is set;
/// `space` is always set (from the quadrature for kernel problems).
///
struct Problem {
    SpacePtr space;
    Tolerances tolerances;
    std::optional<FredholmOperator> op;
    std::optional<KernelProblem> kernel;
    std::optional<Matrix> matrix;
    std::optional<Vector> rhs;
};

Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

} // namespace fredholm::cli
