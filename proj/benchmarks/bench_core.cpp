#include <benchmark/benchmark.h>

#include "dsqft/kernels.hpp"
#include "dsqft/specfun.hpp"
#include "dsqft/wightman.hpp"

using namespace dsqft;

static void BM_GammaComplex(benchmark::State& state) {
  cplx z(2.3, 1.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_complex(z));
    z += cplx(1e-9, 0.0);
  }
}
BENCHMARK(BM_GammaComplex);

static void BM_Hyp2f1Half(benchmark::State& state) {
  const cplx mu(0.5, -1.658);
  for (auto _ : state)
    benchmark::DoNotOptimize(hyp2f1(mu, 1.0 - mu, 3.0, 0.5));
}
BENCHMARK(BM_Hyp2f1Half);

static void BM_BuildMode(benchmark::State& state) {
  const ModelParams params = ModelParams::with_frak_m(6, 3.0);
  const int s = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(build_mode(params, s, 1e-3));
}
BENCHMARK(BM_BuildMode)->Arg(0)->Arg(10)->Arg(30);

static void BM_KernelEval(benchmark::State& state) {
  const ModelParams params = ModelParams::with_frak_m(6, 3.0);
  ModeSet modes(params, 2, 1e-3);
  const TestFunction f = make_bump(-0.3, 0.3, 2, unit_vector(6, 5));
  const SmearedKernel k(KernelKind::Dplus, f, params, modes);
  const DeSitterPoint y{0.4, unit_vector(6, 0)};
  for (auto _ : state) benchmark::DoNotOptimize(k.eval(y));
}
BENCHMARK(BM_KernelEval);

static void BM_RetardedEval(benchmark::State& state) {
  const ModelParams params = ModelParams::with_frak_m(6, 3.0);
  ModeSet modes(params, 2, 1e-3);
  const TestFunction f = make_bump(-0.3, 0.3, 2, unit_vector(6, 5));
  const SmearedKernel k(KernelKind::Gret, f, params, modes);
  const DeSitterPoint y{-0.6, unit_vector(6, 0)};
  for (auto _ : state) benchmark::DoNotOptimize(k.eval(y));
}
BENCHMARK(BM_RetardedEval);

static void BM_Npoint3(benchmark::State& state) {
  const ModelParams params = ModelParams::with_frak_m(6, 3.0);
  ModeSet modes(params, 2, 1e-3);
  GridSpec gs;
  gs.tau_panels = 12;
  gs.tau_order = 10;
  gs.sphere_points = static_cast<int>(state.range(0));
  gs.epsilon_cut = 2e-3;
  WightmanEngine engine(params, modes, make_grid(gs, params));
  const std::vector<FieldSlot> slots{
      loc_slot(make_bump(-0.45, -0.05, 0, unit_vector(6, 5))),
      loc_slot(make_bump(-0.2, 0.2, 0, unit_vector(6, 0))),
      loc_slot(make_bump(0.05, 0.4, 0, unit_vector(6, 1)))};
  for (auto _ : state) benchmark::DoNotOptimize(engine.truncated_npoint(slots));
}
BENCHMARK(BM_Npoint3)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
