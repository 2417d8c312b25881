#include <benchmark/benchmark.h>

#include <qgen/verify.hpp>

using namespace qgen;

namespace {

Construction make_construction(std::uint64_t p, int d) {
  return construct_q_generic(QuadraticForm::sphere(Prime::checked(p), d), d);
}

void BM_field_quadric_scan(benchmark::State& state) {
  auto c = make_construction(static_cast<std::uint64_t>(state.range(0)),
                             static_cast<int>(state.range(1)));
  auto d = field_point_set(c);
  VerifyOptions opt;
  opt.threads = 1;
  opt.incidence_point_limit = 0;  // isolate the subset scan
  std::uint64_t subsets = 0;
  for (auto _ : state) {
    auto h = check_hyperplanes(d, opt);
    auto s = check_quadrics(d, c.form, h, opt);
    benchmark::DoNotOptimize(s);
    subsets = h.subsets_tested + s.subsets_tested;
  }
  state.counters["subsets"] = static_cast<double>(subsets);
  state.counters["subsets/s"] =
      benchmark::Counter(static_cast<double>(subsets), benchmark::Counter::kIsIterationInvariantRate);
}

void BM_grid_quadric_scan(benchmark::State& state) {
  auto g = construct_grid(static_cast<std::uint64_t>(state.range(0)), 2, RationalForm::sphere(2));
  auto d = grid_point_set(g);
  VerifyOptions opt;
  opt.threads = 1;
  opt.incidence_point_limit = 0;
  for (auto _ : state) {
    auto h = check_hyperplanes(d, opt);
    auto s = check_quadrics(d, g.form, h, opt);
    benchmark::DoNotOptimize(s);
  }
}

void BM_rich_basis_enumeration(benchmark::State& state) {
  auto q = QuadraticForm::sphere(Prime::checked(static_cast<std::uint64_t>(state.range(0))), 3);
  for (auto _ : state) {
    auto b = rich_basis(q);
    benchmark::DoNotOptimize(b);
  }
}

void BM_construct_grid(benchmark::State& state) {
  auto q = RationalForm::sphere(2);
  for (auto _ : state) {
    auto g = construct_grid(static_cast<std::uint64_t>(state.range(0)), 2, q);
    benchmark::DoNotOptimize(g);
  }
}

}  // namespace

BENCHMARK(BM_field_quadric_scan)->Args({53, 2})->Args({97, 2})->Args({53, 3})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_grid_quadric_scan)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rich_basis_enumeration)->Arg(53)->Arg(97);
BENCHMARK(BM_construct_grid)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
