#include <benchmark/benchmark.h>

#include <random>

#include "secluded/exposure.hpp"
#include "secluded/reduction.hpp"
#include "secluded/sat.hpp"
#include "secluded/solvers.hpp"
#include "secluded/subdivision.hpp"
#include "secluded/visibility.hpp"

using namespace secluded;

namespace {

Ring ring(std::initializer_list<std::pair<int, int>> pts) {
  Ring r;
  for (auto [x, y] : pts) r.emplace_back(x, y);
  return r;
}

// Comb with `teeth` slots; 4 * teeth + 4 vertices.
PolygonalDomain comb(int teeth) {
  Ring r{Point(0, 0), Point(2 * teeth + 1, 0), Point(2 * teeth + 1, 6)};
  for (int i = teeth; i > 0; --i) {
    r.emplace_back(2 * i, 6);
    r.emplace_back(2 * i, 1);
    r.emplace_back(2 * i - 1, 1);
    r.emplace_back(2 * i - 1, 6);
  }
  r.emplace_back(0, 6);
  return PolygonalDomain::create(r);
}

PolygonalDomain two_holes() {
  return PolygonalDomain::create(ring({{0, 0}, {8, 0}, {8, 6}, {0, 6}}),
                                 {ring({{1, 1}, {3, 1}, {3, 4}, {1, 4}}), ring({{5, 2}, {7, 2}, {6, 5}})});
}

PolygonalDomain niche() {
  return PolygonalDomain::create(ring({{-20, 1}, {0, 1}, {0, 0}, {12, 0}, {12, 1}, {32, 1}, {32, 2}, {12, 2},
                                       {12, 4}, {0, 4}, {0, 2}, {-20, 2}}));
}

Cnf random_monotone(std::mt19937& rng, std::size_t n, std::size_t m) {
  Cnf cnf{n, {}};
  for (std::size_t c = 0; c < m; ++c) {
    const bool pos = rng() % 2;
    cnf.clauses.push_back({{rng() % n, pos}, {rng() % n, pos}});
  }
  return cnf;
}

}  // namespace

static void BM_VisibilityPolygon(benchmark::State& state) {
  const PolygonalDomain d = comb(static_cast<int>(state.range(0)));
  const Point p = Point::from_double(0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(visibility_polygon(d, p).area);
  state.counters["n"] = static_cast<double>(d.vertex_count());
}
BENCHMARK(BM_VisibilityPolygon)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_VisibilityDecomposition(benchmark::State& state) {
  const PolygonalDomain d = comb(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(visibility_decomposition(d).face_count());
}
BENCHMARK(BM_VisibilityDecomposition)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_WeightedSubdivision(benchmark::State& state) {
  const PolygonalDomain d = two_holes();
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_weighted_subdivision(d, eps).region_count());
}
BENCHMARK(BM_WeightedSubdivision)->Arg(2)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_Ptas(benchmark::State& state) {
  const PolygonalDomain d = niche();
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(integral_secluded_ptas(d, Point(1, 1), Point(11, 1), eps).exposure);
}
BENCHMARK(BM_Ptas)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ShortestPathSimple(benchmark::State& state) {
  const PolygonalDomain d = comb(static_cast<int>(state.range(0)));
  const Point t = Point::from_double(2.0 * static_cast<double>(state.range(0)) + 0.5, 5.5);
  for (auto _ : state) benchmark::DoNotOptimize(shortest_path_simple(d, Point::from_double(0.5, 5.5), t).length());
}
BENCHMARK(BM_ShortestPathSimple)->Arg(4)->Arg(16)->Arg(64);

static void BM_SecludedHoles(benchmark::State& state) {
  const PolygonalDomain d = two_holes();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(secluded_path_holes(d, Point::from_double(0.5, 0.5), Point::from_double(7.5, 5.5), k).area);
}
BENCHMARK(BM_SecludedHoles)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Min2SatMonotone(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Cnf cnf = random_monotone(rng, n, 2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(min2sat_monotone(cnf).value);
}
BENCHMARK(BM_Min2SatMonotone)->RangeMultiplier(4)->Range(16, 4096);

static void BM_BruteForce(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const Cnf cnf = random_monotone(rng, n, 2 * n);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_opt(cnf, Objective::Min).value);
}
BENCHMARK(BM_BruteForce)->DenseRange(8, 16, 4);

static void BM_ChristmasTree(benchmark::State& state) {
  const Cnf cnf{3, {{{0, true}, {1, true}}, {{1, false}, {2, true}}, {{0, false}, {2, false}}, {{0, true}, {2, true}}}};
  for (auto _ : state) benchmark::DoNotOptimize(build_christmas_tree(cnf).a);
}
BENCHMARK(BM_ChristmasTree)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
