#include <benchmark/benchmark.h>

#include "hasse/cyclotomic.hpp"
#include "hasse/forms.hpp"
#include "hasse/globalcheck.hpp"
#include "hasse/localsolve.hpp"

using namespace hasse;

namespace {

MultiPoly t1_form() {
  const FormParams p = make_params(Variant::T1, 7, 2, {}, 1, 2);
  return build_form(p, minimal_polynomial(7, ThetaVariant::real_theta)).form;
}

void BM_NormForm(benchmark::State& state) {
  const auto N = static_cast<std::uint64_t>(state.range(0));
  const auto gamma = static_cast<unsigned>(state.range(1));
  const CyclotomicBasis basis = minimal_polynomial(N, ThetaVariant::real_theta);
  for (auto _ : state) benchmark::DoNotOptimize(norm_form(basis, gamma));
}
BENCHMARK(BM_NormForm)->Args({7, 2})->Args({11, 4})->Args({19, 4})->Unit(benchmark::kMillisecond);

void BM_FpPoints(benchmark::State& state) {
  const MultiPoly f = t1_form();
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fp_points(f, p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p * p * p));
}
BENCHMARK(BM_FpPoints)->Arg(31)->Arg(97)->Unit(benchmark::kMillisecond);

void BM_FindLiftable(benchmark::State& state) {
  const MultiPoly f = t1_form();
  for (auto _ : state) {
    for (auto p : primes_below(200)) benchmark::DoNotOptimize(find_liftable_point(f, p));
  }
}
BENCHMARK(BM_FindLiftable)->Unit(benchmark::kMillisecond);

void BM_HeightSearch(benchmark::State& state) {
  const MultiPoly f = t1_form();
  const auto H = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t tuples = 0;
  for (auto _ : state) tuples = height_search(f, H).tuples_searched;
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tuples));
}
BENCHMARK(BM_HeightSearch)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
