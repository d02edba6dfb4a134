#include <benchmark/benchmark.h>

#include "absorder/axioms.hpp"
#include "absorder/generators.hpp"
#include "absorder/maps.hpp"
#include "absorder/matrix_order.hpp"
#include "absorder/space.hpp"

using namespace absorder;

namespace {

void BM_abs_element(benchmark::State& state) {
  const auto model = SpaceModel::hermitian(static_cast<int>(state.range(0)));
  RngStream rng(1);
  const Element v = draw_self_adjoint(model, rng);
  for (auto _ : state) benchmark::DoNotOptimize(abs_element(model, v));
}
BENCHMARK(BM_abs_element)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_order_unit_norm(benchmark::State& state) {
  const auto model = SpaceModel::hermitian(static_cast<int>(state.range(0)));
  RngStream rng(2);
  const Element v = draw_self_adjoint(model, rng);
  for (auto _ : state) benchmark::DoNotOptimize(order_unit_norm(model, v));
}
BENCHMARK(BM_order_unit_norm)->Arg(4)->Arg(16);

void BM_axiom_suite(benchmark::State& state) {
  const auto model = SpaceModel::hermitian(3);
  ToleranceConfig cfg;
  cfg.samples = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(check_absolutely_ordered_axioms(model, cfg));
}
BENCHMARK(BM_axiom_suite)->Arg(25)->Arg(100);

void BM_amplified_abs_preserving(benchmark::State& state) {
  const auto gen = gen_map({MapFamily::unitary_conjugation, 3});
  ToleranceConfig cfg;
  cfg.samples = 50;
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(is_abs_preserving_detail(gen.map, cfg, level));
}
BENCHMARK(BM_amplified_abs_preserving)->Arg(1)->Arg(2)->Arg(3);

void BM_isometry_characterization(benchmark::State& state) {
  const auto gen = gen_map({MapFamily::unitary_conjugation, 3});
  ToleranceConfig cfg;
  cfg.samples = 100;
  for (auto _ : state)
    benchmark::DoNotOptimize(isometry_characterization_suite(gen.map, cfg));
}
BENCHMARK(BM_isometry_characterization);

void BM_multiplicativity_suite(benchmark::State& state) {
  const auto gen = gen_map({MapFamily::transpose, 2});
  ToleranceConfig cfg;
  cfg.samples = 50;
  for (auto _ : state)
    benchmark::DoNotOptimize(multiplicativity_equivalence_suite(gen.map, cfg));
}
BENCHMARK(BM_multiplicativity_suite);

}  // namespace

BENCHMARK_MAIN();
