#include <benchmark/benchmark.h>

#include <cmath>

#include "hodg/projection.hpp"

namespace {

void BM_Project1dP1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto mesh = hodg::Mesh1D::build(n, {0.0, 2.0 * M_PI});
  const hodg::ScalarFunc1D f{[](int d, double x) { return std::sin(x + 0.5 * M_PI * d); }};
  for (auto _ : state) {
    auto p = hodg::project_1d(hodg::ProjectionKind::P1Plus, f, mesh, 3);
    benchmark::DoNotOptimize(p.coeffs().data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_Project1dP1)->Arg(80)->Arg(320);

void BM_Project2dPi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto domain = hodg::Interval{0.0, 2.0 * M_PI};
  const auto mesh = hodg::Mesh2D::build(n, n, domain, domain);
  const hodg::ScalarFunc2D f{[](int dx, int dy, double x, double y) {
    return std::sin(x + y + 0.5 * M_PI * (dx + dy));
  }};
  for (auto _ : state) {
    auto p = hodg::project_2d(hodg::ProjectionKind::Pi2dPlus, f, mesh, 2);
    benchmark::DoNotOptimize(p.coeffs().data());
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_Project2dPi)->Arg(8)->Arg(32);

}  // namespace
