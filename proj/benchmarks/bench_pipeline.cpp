#include <benchmark/benchmark.h>

#include "fredholm/alternative.hpp"
#include "fredholm/kernels.hpp"
#include "fredholm/oracle.hpp"
#include "fredholm/testing/generators.hpp"

using namespace fredholm;
using namespace fredholm::testing;

namespace {

// rank-5 operator with a 2-dimensional null space on a weighted complex space
struct Fixture {
    SpacePtr space;
    FredholmOperator A;
    Vector f;
};

Fixture make(std::size_t n, bool identity_b) {
    Rng rng(42 + n);
    auto space = random_space(rng, n, true);
    auto B = identity_b ? Isomorphism::identity(space) : random_isomorphism(rng, space, true);
    auto F = times_isomorphism(degenerate_second_kind(rng, space, 5, 2, true), B, rng, false);
    FredholmOperator A(std::move(B), std::move(F));
    auto f = A.apply(random_vector(rng, space, true));
    return {space, std::move(A), std::move(f)};
}

void BM_ReducedSolve(benchmark::State& state) {
    const auto fx = make(static_cast<std::size_t>(state.range(0)), state.range(1) != 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve(fx.A, fx.f));
}

void BM_DenseOracleSolve(benchmark::State& state) {
    const auto fx = make(static_cast<std::size_t>(state.range(0)), state.range(1) != 0);
    for (auto _ : state) {
        const auto dense = oracle::materialize(fx.A);
        benchmark::DoNotOptimize(oracle::dense_solve(dense, fx.f));
    }
}

void BM_Analyze(benchmark::State& state) {
    const auto fx = make(static_cast<std::size_t>(state.range(0)), false);
    for (auto _ : state)
        benchmark::DoNotOptimize(analyze(fx.A));
}

void BM_Decompose(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    Rng rng(7);
    const auto space = random_space(rng, n, true);
    const auto a = random_singular_matrix(rng, n, 2, true);
    for (auto _ : state)
        benchmark::DoNotOptimize(decompose(a, space));
}

void BM_GaussLegendre(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::gauss_legendre(n, 0.0, 1.0));
}

void BM_IntegralEquation(benchmark::State& state) {
    const auto q = kernels::gauss_legendre(static_cast<std::size_t>(state.range(0)), 0.0, 1.0);
    const kernels::DegenerateKernel k{0.0,
                                      1.0,
                                      {{kernels::Polynomial{{0.0, 1.0}}, kernels::Polynomial{{0.0, 1.0}}},
                                       {kernels::Sine{2.0, 0.5}, kernels::Cosine{1.0, 1.0}}}};
    const auto f = kernels::sample(kernels::Polynomial{{1.0, -1.0}}, q.nodes);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::solve_integral_equation(k, q, f));
}

} // namespace

BENCHMARK(BM_ReducedSolve)->ArgsProduct({{50, 200, 500}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DenseOracleSolve)->ArgsProduct({{50, 200, 500}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Analyze)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Decompose)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GaussLegendre)->Arg(16)->Arg(128)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_IntegralEquation)->Arg(64)->Arg(512)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
