#include <benchmark/benchmark.h>

#include "nchatl/family.hpp"
#include "nchatl/formula.hpp"
#include "nchatl/model.hpp"
#include "nchatl/oracle.hpp"
#include "nchatl/profiles.hpp"
#include "nchatl/semantics.hpp"

namespace {

using namespace nchatl;

// Compliant-profile computation at the hub of the coordination family.
void BM_CompliantProfiles(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Model model = coordination_model(n);
  NormativeSystem norm = coordination_norm(model);
  Coalition window = make_coalition({n - 3, n - 2, n - 1, n});
  Coalition ambient = make_coalition({n - 1, n});
  for (auto _ : state) {
    ProfileEngine engine(model, norm);
    benchmark::DoNotOptimize(engine.compliant(0, ambient, window));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_CompliantProfiles)
    ->Arg(100)
    ->Arg(1000)
    ->Arg(10000)
    ->Complexity();

// Full evaluation of a norm-scoped coalition query over the family.
void BM_ModelCheck(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Model model = coordination_model(n);
  NormativeSystem norm = coordination_norm(model);
  std::string text = "[{" + std::to_string(n - 1) + "," + std::to_string(n) +
                     "}] !<<{" + std::to_string(n - 3) + "-" +
                     std::to_string(n) + "}>> X !(p1 & p2)";
  Formula f = parse_formula(text, model);
  for (auto _ : state) {
    ProfileEngine engine(model, norm);
    CheckContext ctx{&model, &norm, {}, &engine};
    benchmark::DoNotOptimize(mcheck(ctx, f));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ModelCheck)->Arg(100)->Arg(1000)->Arg(10000)->Complexity();

// Raw enumeration of count vectors for a fixed coalition size.
void BM_PartialProfiles(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Model model = coordination_model(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(partial_profiles(model, 0, n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_PartialProfiles)->Arg(100)->Arg(1000)->Arg(10000)->Complexity();

// Explicit expansion: exponential in the agent count by construction.
void BM_Expand(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Model model = coordination_model(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expand(model));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Expand)->DenseRange(4, 12, 4);

}  // namespace

BENCHMARK_MAIN();
