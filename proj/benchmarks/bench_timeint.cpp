#include <benchmark/benchmark.h>

#include "hodg/harness.hpp"

namespace {

void BM_AssembleOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto problem = hodg::linear_problem(5, hodg::SignConvention::PositiveOdd);
  const auto mesh = hodg::Mesh1D::build(n, problem.domain);
  for (auto _ : state) {
    auto op = hodg::assemble_operator(problem, mesh, 3, hodg::FluxConfig{});
    benchmark::DoNotOptimize(op.values().data());
  }
}
BENCHMARK(BM_AssembleOperator)->Arg(40)->Arg(160);

void BM_IntegrateLinear4th(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto problem = hodg::linear_problem(4);
  const auto mesh = hodg::Mesh1D::build(n, problem.domain);
  const auto u0 = hodg::initial_condition(problem, mesh, 2);
  hodg::SDCConfig sdc;
  sdc.sweeps = 4;
  for (auto _ : state) {
    auto res = hodg::integrate(problem, u0, 0.05, sdc, hodg::FluxConfig{});
    benchmark::DoNotOptimize(res.u.coeffs().data());
  }
}
BENCHMARK(BM_IntegrateLinear4th)->Arg(40)->Arg(160);

}  // namespace
