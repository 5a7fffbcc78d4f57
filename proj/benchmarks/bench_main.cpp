#include <benchmark/benchmark.h>

#include "bsq/action.hpp"
#include "bsq/eigensolver.hpp"
#include "bsq/quantize_circle.hpp"
#include "bsq/quantize_fock.hpp"
#include "bsq/symbol_text.hpp"

namespace {

const bsq::CircleSymbol& figure_symbol() {
  static const bsq::CircleSymbol s = bsq::parse_circle_symbol("I ; cos(theta) + I^2");
  return s;
}

template <class Real>
void BM_CircleSpectrum(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const Real hbar = Real(1) / Real(N);
  const auto m = bsq::circle_matrix<Real>(figure_symbol(), Real(0.1), hbar, N);
  bsq::EigenOptions opts;
  opts.compute_residuals = false;
  for (auto _ : state) benchmark::DoNotOptimize(bsq::eigenvalues(m, opts));
  state.SetComplexityN(2 * N + 1);
}
BENCHMARK(BM_CircleSpectrum<double>)->Arg(16)->Arg(33)->Arg(66)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_CircleSpectrum<long double>)->Arg(16)->Arg(33)->Arg(66)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_CircleSpectrum<bsq::DoubleDouble>)->Arg(16)->Arg(33)->Arg(66)->Complexity(benchmark::oNCubed);

void BM_Residuals(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto m = bsq::quantize_circle(figure_symbol(), 0.1, 1.0 / N, N).matrix;
  for (auto _ : state) benchmark::DoNotOptimize(bsq::eigenvalues(m));
}
BENCHMARK(BM_Residuals)->Arg(33)->Arg(66);

void BM_QuantizeCircle(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bsq::quantize_circle(figure_symbol(), 0.1, 1.0 / N, N));
}
BENCHMARK(BM_QuantizeCircle)->Arg(66)->Arg(132);

void BM_QuantizePlane(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto s = bsq::parse_plane_symbol("x^2 + xi^2 ; x^4", 0.12);
  for (auto _ : state) benchmark::DoNotOptimize(bsq::quantize_plane(s, 1.0 / N, N));
}
BENCHMARK(BM_QuantizePlane)->Arg(33)->Arg(66);

void BM_InvertAction(benchmark::State& state) {
  const bsq::ActionMap am(bsq::CylinderSymbol::circle(figure_symbol(), 0.1231), 0.0);
  double I = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(am.invert_action(I));
    I = I > 0.5 ? 0.0 : I + 1.0 / 66;
  }
}
BENCHMARK(BM_InvertAction);

}  // namespace

BENCHMARK_MAIN();
