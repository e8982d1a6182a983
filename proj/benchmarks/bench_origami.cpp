#include <benchmark/benchmark.h>

#include "origami/homology.hpp"
#include "origami/veech.hpp"
#include "origami/zoo.hpp"

using namespace origami;

namespace {

void BM_CanonicalizeFast(benchmark::State& state, char const* name) {
  auto o = build_named(name).origami;
  for (auto _ : state) benchmark::DoNotOptimize(fast_canonicalize(o));
}

void BM_CanonicalizeFull(benchmark::State& state, char const* name) {
  auto o = build_named(name).origami;
  for (auto _ : state) benchmark::DoNotOptimize(canonicalize(o));
}

void BM_Orbit(benchmark::State& state, char const* name) {
  auto o = build_named(name).origami;
  for (auto _ : state) benchmark::DoNotOptimize(orbit_stabilizer(o));
}

void BM_ExploreX(benchmark::State& state) {
  auto o = build_x().origami;
  for (auto _ : state) benchmark::DoNotOptimize(explore_orbit(o, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_HomologyBasis(benchmark::State& state, char const* name) {
  auto o = build_named(name).origami;
  for (auto _ : state) benchmark::DoNotOptimize(homology_basis(o));
}

void BM_ClosureEW(benchmark::State& state) {
  auto ew = build_ew();
  auto hd = homology_basis(ew.origami);
  auto sp = split_subspaces(hd, ew.cover("pi"));
  auto gens = sl2z_generators(hd);
  std::vector<std::size_t> zeros;
  for (auto const& m : ew.marked) zeros.push_back(m.vertex);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        monodromy_closure(gens, 4, zeros, sp.h0, ClosurePredicate::PlusMinusIdentity));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_CanonicalizeFast, ew, "ew");
BENCHMARK_CAPTURE(BM_CanonicalizeFast, x512, "x512");
BENCHMARK_CAPTURE(BM_CanonicalizeFast, covm4_5, "covm4:5");
BENCHMARK_CAPTURE(BM_CanonicalizeFull, ew, "ew");
BENCHMARK_CAPTURE(BM_CanonicalizeFull, x512, "x512")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Orbit, m4tilde, "m4tilde");
BENCHMARK_CAPTURE(BM_Orbit, ew128, "ew128")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExploreX)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_HomologyBasis, m4, "m4");
BENCHMARK_CAPTURE(BM_HomologyBasis, x512, "x512")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_HomologyBasis, covm4_5, "covm4:5")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureEW)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
