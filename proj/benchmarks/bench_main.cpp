#include <benchmark/benchmark.h>

#include "scalarkit/malcev.hpp"

using namespace scalarkit;
using modules::ModuleDesc;
using rings::RingPresentation;

namespace {

// (e_0, e_i) = e_{i+1}: filiform algebra of class n - 1.
std::shared_ptr<const malcev::NilpotentLieAlgebra> filiform(std::size_t n) {
  Domain q = Domain::rationals();
  std::vector<std::vector<Vector>> t(n, std::vector<Vector>(n, zero_vector(q, n)));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    t[0][i][i + 1] = Scalar(q, 1L);
    t[i][0][i + 1] = Scalar(q, -1L);
  }
  return std::make_shared<const malcev::NilpotentLieAlgebra>(
      malcev::verify_nilpotent_lie(RingPresentation(ModuleDesc::vector_space(q, n), t)));
}

Matrix random_matrix(Rng& rng, const Domain& d, std::size_t rows, std::size_t cols) {
  Matrix m(d, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.scalar(d, 9);
  return m;
}

// GF(p)[x]/(m) read as the bilinear map of its multiplication.
bilinear::BilinearMap algebra_map(long p, const std::vector<Rational>& minpoly) {
  Domain d = Domain::prime_field(p);
  auto a = artinian::CommutativeAlgebra::polynomial_quotient(Poly::from_rationals(d, minpoly));
  auto space = ModuleDesc::vector_space(d, a.dim());
  return bilinear::BilinearMap(space, space, a.table());
}

}  // namespace

void BM_Bch(benchmark::State& state) {
  auto l = filiform(static_cast<std::size_t>(state.range(0)) + 1);
  Rng rng(1);
  Vector x, y;
  for (std::size_t i = 0; i < l->dim(); ++i) {
    x.emplace_back(l->field(), rng.rational(5));
    y.emplace_back(l->field(), rng.rational(5));
  }
  for (auto _ : state) benchmark::DoNotOptimize(malcev::bch(*l, x, y));
}
BENCHMARK(BM_Bch)->DenseRange(2, 6);

void BM_RrefRationals(benchmark::State& state) {
  Rng rng(2);
  auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_matrix(rng, Domain::rationals(), n, n);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_RrefRationals)->RangeMultiplier(2)->Range(4, 32);

void BM_RrefPrimeField(benchmark::State& state) {
  Rng rng(3);
  auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_matrix(rng, Domain::prime_field(101), n, n);
  for (auto _ : state) benchmark::DoNotOptimize(rref(m));
}
BENCHMARK(BM_RrefPrimeField)->RangeMultiplier(2)->Range(4, 64);

void BM_SmithNormalForm(benchmark::State& state) {
  Rng rng(4);
  auto n = static_cast<std::size_t>(state.range(0));
  Matrix m = random_matrix(rng, Domain::integers(), n, n);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(2, 16);

void BM_POfF(benchmark::State& state) {
  // GF(3)[x]/(x^n - x - 1), n = 2..4
  auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Rational> m(n + 1, Rational(0));
  m[0] = -1;
  m[1] = -1;
  m[n] = 1;
  auto f = algebra_map(3, m);
  for (auto _ : state) benchmark::DoNotOptimize(scalar_rings::p_of_f(f));
}
BENCHMARK(BM_POfF)->DenseRange(2, 4);

BENCHMARK_MAIN();
