#include <benchmark/benchmark.h>

#include <random>

#include "strataforge/hodge_limits.hpp"

using namespace strataforge;

namespace {

struct Space {
  std::unique_ptr<RealForm> rf;
  CartanHasse hasse;
  explicit Space(const std::string& type, std::vector<int> grading)
      : rf(std::make_unique<RealForm>(LieAlgebra::build(RootSystem::build(type)), GradingDatum{std::move(grading)})),
        hasse(cartan_hasse(*rf)) {}
};

void multiply(benchmark::State& state) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<long> d(-9, 9);
  Cyclo8 a(d(rng), d(rng), d(rng), d(rng)), b(d(rng), d(rng), d(rng), d(rng));
  for (auto _ : state) {
    Cyclo8 c = a * b + Cyclo8(1);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(multiply);

void build_algebra(benchmark::State& state, const char* type) {
  for (auto _ : state) benchmark::DoNotOptimize(LieAlgebra::build(RootSystem::build(type)));
}
BENCHMARK_CAPTURE(build_algebra, A2, "A2");
BENCHMARK_CAPTURE(build_algebra, G2, "G2");
BENCHMARK_CAPTURE(build_algebra, C3, "C3");

void cartans(benchmark::State& state, const char* type, std::vector<int> grading) {
  for (auto _ : state) benchmark::DoNotOptimize(Space(type, grading).hasse.frames.size());
}
BENCHMARK_CAPTURE(cartans, C2, "C2", std::vector<int>{1, 1});
BENCHMARK_CAPTURE(cartans, G2, "G2", std::vector<int>{1, 1});

void orbits(benchmark::State& state, const char* type, std::vector<int> grading) {
  Space s(type, grading);
  for (auto _ : state) benchmark::DoNotOptimize(OrbitSpace(*s.rf, s.hasse).records().size());
}
BENCHMARK_CAPTURE(orbits, A2_complete, "A2", std::vector<int>{1, 1})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(orbits, C2_complete, "C2", std::vector<int>{1, 1})->Unit(benchmark::kMillisecond);

void weight_filtrations(benchmark::State& state) {
  auto la = LieAlgebra::build(RootSystem::build("C3"));
  const RootSystem& rs = la->roots();
  Vec n(la->dim());
  for (std::size_t a = 0; a < rs.rank(); ++a) n[la->x_index(rs.negative(a))] = Cyclo8(1);
  for (auto _ : state) benchmark::DoNotOptimize(weight_filtration(*la, n).gr_dim(0));
}
BENCHMARK(weight_filtrations)->Unit(benchmark::kMillisecond);

void classify_all(benchmark::State& state) {
  Space s("C2", {1, 1});
  OrbitSpace space(*s.rf, s.hasse);
  for (auto _ : state) {
    std::size_t polarizable = 0;
    for (std::size_t k = 0; k < space.records().size(); ++k) {
      polarizable += polarizability(space, k).verdict == Polarizability::polarizable;
    }
    benchmark::DoNotOptimize(polarizable);
  }
}
BENCHMARK(classify_all)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
