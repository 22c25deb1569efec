#include <benchmark/benchmark.h>

#include <string>

#include "heightlab/asymptotics.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/northcott.hpp"
#include "heightlab/text_io.hpp"

using namespace heightlab;

namespace {

const MatrixK& sample3() {
  static const MatrixK t = parse_matrix("[[4,-1,7],[-4,-2,6],[5,-7,3]]", Field());
  return t;
}

void BM_VectorHeight(benchmark::State& state) {
  const VectorK x = parse_vector("[12/7,-5/3,9,44/15]", Field());
  for (auto _ : state) benchmark::DoNotOptimize(height_vector(x));
}
BENCHMARK(BM_VectorHeight);

void BM_MatrixHeight(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(height_matrix(sample3()));
}
BENCHMARK(BM_MatrixHeight);

void BM_SpectralHeight(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(height_spectral(sample3()));
}
BENCHMARK(BM_SpectralHeight);

void BM_SpectralHeightQuadratic(benchmark::State& state) {
  const MatrixK t = parse_matrix("[[8,6-r,5],[5,-2,6+9*r],[-4,8,4]]", Field::quadratic(6));
  for (auto _ : state) benchmark::DoNotOptimize(height_spectral(t));
}
BENCHMARK(BM_SpectralHeightQuadratic);

void BM_PowerStripped(benchmark::State& state) {
  const auto k = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(power_stripped(sample3(), k));
}
BENCHMARK(BM_PowerStripped)->RangeMultiplier(8)->Range(8, 4096);

void BM_GelfandSequence(benchmark::State& state) {
  const auto jmax = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gelfand_sequence(sample3(), jmax));
}
BENCHMARK(BM_GelfandSequence)->DenseRange(6, 12, 3)->Unit(benchmark::kMillisecond);

void BM_Distance(benchmark::State& state) {
  const Subspace x(Field(), 4, {parse_vector("[1,2,0,3]", Field()), parse_vector("[0,3,5,-1]", Field())});
  const VectorK y = parse_vector("[2,-3,1,7]", Field());
  for (auto _ : state) benchmark::DoNotOptimize(distance(y, x));
}
BENCHMARK(BM_Distance);

void BM_EnumPoints(benchmark::State& state) {
  const double b = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enum_projective_points(3, b));
}
BENCHMARK(BM_EnumPoints)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_EnumInvertible(benchmark::State& state) {
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enum_invertible_endos(2, 4.0, workers));
}
BENCHMARK(BM_EnumInvertible)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
