#include <benchmark/benchmark.h>

#include <random>

#include "gtorsion/gamma.hpp"
#include "gtorsion/linalg.hpp"
#include "gtorsion/pipeline.hpp"
#include "gtorsion/resolutions.hpp"

using namespace gtorsion;

namespace {

IntMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-5, 5);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Integer(dist(rng));
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = random_matrix(n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_KerD2(benchmark::State& state, const char* group) {
  const auto g = share(catalog(group));
  const auto r = presentation_complex(g);
  for (auto _ : state) benchmark::DoNotOptimize(ker_d2(r));
}
BENCHMARK_CAPTURE(BM_KerD2, D8, "D8")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_KerD2, C2xC2xC2xC2, "C2xC2xC2xC2")->Unit(benchmark::kMillisecond);

void BM_Gamma(benchmark::State& state, const char* group) {
  const auto k = ker_d2(presentation_complex(share(catalog(group))));
  for (auto _ : state) benchmark::DoNotOptimize(gamma(k));
}
BENCHMARK_CAPTURE(BM_Gamma, D8, "D8")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Gamma, C2xC2xC2xC2, "C2xC2xC2xC2")->Unit(benchmark::kMillisecond);

void BM_TateH0(benchmark::State& state, const char* group) {
  const auto gm = gamma(ker_d2(presentation_complex(share(catalog(group))))).module;
  for (auto _ : state) benchmark::DoNotOptimize(tate_h0(gm));
}
BENCHMARK_CAPTURE(BM_TateH0, D8, "D8")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_TateH0, C2xC2xC2xC2, "C2xC2xC2xC2")->Unit(benchmark::kSecond)->Iterations(1);

void BM_ComputeKer(benchmark::State& state, const char* group) {
  for (auto _ : state) benchmark::DoNotOptimize(compute(group, Side::ker));
}
BENCHMARK_CAPTURE(BM_ComputeKer, Q8, "Q8")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ComputeKer, Q8xC2, "Q8xC2")->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
