#include <benchmark/benchmark.h>

#include "sdyn/dynamics.hpp"
#include "sdyn/linalg.hpp"

#include <random>

using sdyn::FieldElem;
using sdyn::linalg::Matrix;

namespace {

// Dense matrix over Q(t) with small random entries and a t-dependent column.
Matrix sample(std::size_t n, bool symbolic) {
  std::mt19937 rng(static_cast<unsigned>(n));
  std::uniform_int_distribution<int> c(-9, 9);
  Matrix m(n, n + 1);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= n; ++k) {
      m(r, k) = FieldElem(c(rng));
      if (symbolic && k == r) m(r, k) += FieldElem::symbol("t");
    }
  return m;
}

void BM_RrefSerial(benchmark::State& state, bool symbolic) {
  Matrix m = sample(static_cast<std::size_t>(state.range(0)), symbolic);
  for (auto _ : state) benchmark::DoNotOptimize(sdyn::linalg::rref_serial(m));
}

void BM_RrefParallel(benchmark::State& state, bool symbolic) {
  Matrix m = sample(static_cast<std::size_t>(state.range(0)), symbolic);
  for (auto _ : state) benchmark::DoNotOptimize(sdyn::linalg::rref(m));
}

// Orbit of (1, 1) under (x + y, 2y) against all monomials of degree <= d.
struct OrbitCase {
  std::vector<sdyn::Exponent> monomials;
  std::vector<sdyn::Point> points;
};

OrbitCase orbit_case(unsigned d) {
  OrbitCase c;
  for (std::uint16_t i = 0; i <= d; ++i)
    for (std::uint16_t j = 0; i + j <= d; ++j) c.monomials.push_back({i, j});
  sdyn::Point a{FieldElem(1), FieldElem(1)};
  for (std::size_t k = 0; k < 2 * c.monomials.size(); ++k) {
    c.points.push_back(a);
    a = {a[0] + a[1], a[1] + a[1]};
  }
  return c;
}

void BM_OrbitSerial(benchmark::State& state) {
  OrbitCase c = orbit_case(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sdyn::evaluation_matrix_serial(c.monomials, c.points));
}

void BM_OrbitParallel(benchmark::State& state) {
  OrbitCase c = orbit_case(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sdyn::evaluation_matrix(c.monomials, c.points));
}

} // namespace

BENCHMARK(BM_OrbitSerial)->Arg(3)->Arg(5)->Arg(8);
BENCHMARK(BM_OrbitParallel)->Arg(3)->Arg(5)->Arg(8);
BENCHMARK_CAPTURE(BM_RrefSerial, rational, false)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_RrefParallel, rational, false)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(BM_RrefSerial, function_field, true)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK_CAPTURE(BM_RrefParallel, function_field, true)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
