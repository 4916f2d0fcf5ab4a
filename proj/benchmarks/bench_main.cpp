#include <benchmark/benchmark.h>

#include <cmath>

#include "entdyn/dynamics.hpp"
#include "entdyn/entanglement.hpp"
#include "entdyn/reservoir.hpp"
#include "entdyn/volterra.hpp"

using namespace entdyn;

namespace {

void BM_AmplitudeLorentzian(benchmark::State& state) {
  const AmplitudeFn q(DetunedLorentzian{1.0, 0.1, 0.2});
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q(t));
    t = t < 15.0 ? t + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_AmplitudeLorentzian);

void BM_AmplitudeBandGap(benchmark::State& state) {
  const AmplitudeFn q(BandGapDip{1.0, 1.0, 50.0, 5.0});
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q(t));
    t = t < 50.0 ? t + 1e-3 : 0.0;
  }
}
BENCHMARK(BM_AmplitudeBandGap);

void BM_VolterraSolve(benchmark::State& state) {
  const SpectralModel m = BandGapDip{1.0, 1.0, 50.0, 5.0};
  const double t_max = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto g = volterra::solve([&m](double tau) { return kernel(m, tau); }, {1e-3, t_max});
    benchmark::DoNotOptimize(g.values.back());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VolterraSolve)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ConcurrenceX(benchmark::State& state) {
  const XState psi = bell_like_state({BellFamily::Psi, 1.0 / std::sqrt(3.0), 0.0});
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_x(psi, Complex(0.6, 0.1)));
}
BENCHMARK(BM_ConcurrenceX);

void BM_ConcurrenceWootters(benchmark::State& state) {
  const XState psi = bell_like_state({BellFamily::Psi, 1.0 / std::sqrt(3.0), 0.0});
  const Matrix4 rho = to_dense(lift_two_qubit(psi, Complex(0.6, 0.1), Complex(0.6, 0.1)));
  for (auto _ : state) benchmark::DoNotOptimize(concurrence_wootters(rho));
}
BENCHMARK(BM_ConcurrenceWootters);

void BM_Eig4(benchmark::State& state) {
  const XState psi = bell_like_state({BellFamily::Psi, 0.3, 0.0});
  const Matrix4 rho = to_dense(lift_two_qubit(psi, Complex(0.6, 0.1), Complex(0.5, -0.2)));
  for (auto _ : state) benchmark::DoNotOptimize(eig4(rho));
}
BENCHMARK(BM_Eig4);

void BM_Eigh4(benchmark::State& state) {
  const XState psi = bell_like_state({BellFamily::Psi, 0.3, 0.0});
  const Matrix4 rho = to_dense(lift_two_qubit(psi, Complex(0.6, 0.1), Complex(0.5, -0.2)));
  for (auto _ : state) benchmark::DoNotOptimize(eigh4(rho));
}
BENCHMARK(BM_Eigh4);

void BM_AnalyzePreset(benchmark::State& state) {
  const AmplitudeFn q(DetunedLorentzian{1.0, 0.1, 0.2});
  const XState psi = bell_like_state({BellFamily::Psi, 1.0 / std::sqrt(3.0), 0.0});
  for (auto _ : state) {
    auto tr = analyze(sample_concurrence(q, psi, 15.0, 1501),
                      [&](double t) { return concurrence_x(psi, q(t), t); });
    benchmark::DoNotOptimize(tr.revivals.size());
  }
}
BENCHMARK(BM_AnalyzePreset)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
