// Serial reference vs OpenMP kernels, and the full right-hand sides built on them.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rotwave/kernels.hpp"
#include "rotwave/rch_solver.hpp"
#include "rotwave/rgn_solver.hpp"

using namespace rotwave;

namespace {

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::parallel : Exec::serial; }

std::vector<double> wave(std::size_t n, double phase) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(0.001 * static_cast<double>(i) + phase);
  return v;
}

double sech2(double x) {
  const double s = 1.0 / std::cosh(x / 2.0);
  return s * s;
}

void BM_ScalarFlux(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const GbbmConstants k = gbbm_constants(rch_parameters(0.5));
  const auto w = wave(n, 0.0), wx = wave(n, 1.0), wxx = wave(n, 2.0);
  std::vector<double> out(n);
  for (auto _ : st) {
    kernels::scalar_flux(k, 0.1, 0.01, w.data(), wx.data(), wxx.data(), out.data(), n, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(n));
}

void BM_Rk4Combine(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto y = wave(n, 0.0), a = wave(n, 1.0), b = wave(n, 2.0), c = wave(n, 3.0), d = wave(n, 4.0);
  std::vector<double> out(n);
  for (auto _ : st) {
    kernels::rk4_combine(y.data(), a.data(), b.data(), c.data(), d.data(), 0.01, out.data(), n, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(n));
}

void BM_RchRhs(benchmark::State& st) {
  ScalarModelSpec spec;
  spec.coeffs = rch_parameters(0.5);
  spec.params.epsilon = 0.1;
  spec.params.mu = 0.01;
  spec.grid = {static_cast<std::size_t>(st.range(0)), 64.0};
  spec.exec = exec_of(st);
  const ScalarModel m(spec);
  const Field w = Field::from_function(m.grid(), sech2);
  for (auto _ : st) benchmark::DoNotOptimize(m.rhs(w));
}

void BM_RgnRhs(benchmark::State& st) {
  RgnSpec spec;
  spec.params.epsilon = 0.1;
  spec.params.mu = 0.01;
  spec.params.omega = 0.5;
  spec.grid = {static_cast<std::size_t>(st.range(0)), 64.0};
  spec.exec = exec_of(st);
  const RgnModel m(spec);
  const Field eta = Field::from_function(m.grid(), sech2);
  const WaveState s{eta, Field(m.grid(), eta.vec()), 0.0};
  for (auto _ : st) benchmark::DoNotOptimize(m.rhs(s));
}

}  // namespace

BENCHMARK(BM_ScalarFlux)->ArgsProduct({{1 << 12, 1 << 16, 1 << 20}, {0, 1}});
BENCHMARK(BM_Rk4Combine)->ArgsProduct({{1 << 12, 1 << 16, 1 << 20}, {0, 1}});
BENCHMARK(BM_RchRhs)->ArgsProduct({{1 << 10, 1 << 14}, {0, 1}});
BENCHMARK(BM_RgnRhs)->ArgsProduct({{1 << 10, 1 << 14}, {0, 1}});

BENCHMARK_MAIN();
