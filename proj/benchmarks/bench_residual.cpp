#include <benchmark/benchmark.h>

#include <random>

#include "hodg/scheme1d.hpp"
#include "hodg/scheme2d.hpp"

namespace {

hodg::DGField1D random_state(const hodg::Mesh1D& mesh, int k, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  hodg::DGField1D u(mesh, k);
  for (double& c : u.coeffs()) c = dist(rng);
  return u;
}

void BM_Residual4thLinear(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto problem = hodg::linear_problem(4);
  const auto mesh = hodg::Mesh1D::build(n, problem.domain);
  const auto u = random_state(mesh, 2, 42);
  for (auto _ : state) {
    auto r = hodg::spatial_residual(problem, u, hodg::FluxConfig{}, 0.0);
    benchmark::DoNotOptimize(r.dudt.coeffs().data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Residual4thLinear)->Arg(40)->Arg(160)->Arg(640);

void BM_Residual5thNonlinear(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto problem = hodg::example_problem("ex7.4");
  const auto mesh = hodg::Mesh1D::build(n, problem.domain);
  const auto u = random_state(mesh, 3, 42);
  for (auto _ : state) {
    auto r = hodg::spatial_residual(problem, u, hodg::FluxConfig{}, 0.05);
    benchmark::DoNotOptimize(r.dudt.coeffs().data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Residual5thNonlinear)->Arg(32)->Arg(64);

void BM_Residual2dBiharmonic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto domain = hodg::Interval{0.0, 2.0 * M_PI};
  const auto mesh = hodg::Mesh2D::build(n, n, domain, domain);
  hodg::DGField2D u(mesh, 2);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& c : u.coeffs()) c = dist(rng);
  for (auto _ : state) {
    auto r = hodg::spatial_residual_2d(u, hodg::FluxChoice2D::AltPlusMinus);
    benchmark::DoNotOptimize(r.dudt.coeffs().data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Residual2dBiharmonic)->Arg(16)->Arg(64);

}  // namespace
