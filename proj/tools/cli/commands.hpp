#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "problem.hpp"
#include "report.hpp"

namespace fredholm::cli {

enum ExitCode : int {
    Ok = 0,
    Malformed = 1,
    DimensionMismatch = 2,
    Unsolvable = 3,
    VerifyFailed = 4,
    NumericalFailure = 5,
};

struct Outcome {
    Report report;
    int code = Ok;
};

Outcome cmd_solve(const Problem& p);
Outcome cmd_analyze(const Problem& p);
Outcome cmd_decompose(const Problem& p);
Outcome cmd_verify(const Problem& p);
/// Seeded random instances instead of a problem file.
Outcome cmd_verify_random(std::size_t count, std::uint64_t seed, const Tolerances& tol);

/// Whole command line without the program name; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fredholm::cli
