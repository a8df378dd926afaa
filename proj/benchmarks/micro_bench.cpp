#include <benchmark/benchmark.h>

#include <random>

#include "mixsim/bulk_ops.hpp"
#include "mixsim/compiler.hpp"
#include "mixsim/expr.hpp"
#include "mixsim/mixture.hpp"
#include "mixsim/subarray.hpp"
#include "mixsim/vertical.hpp"

using namespace mixsim;

namespace {

void BM_TraExec(benchmark::State& state) {
  const auto width = static_cast<std::uint32_t>(state.range(0));
  Subarray sub(8, width);
  std::mt19937_64 rng(1);
  for (std::uint32_t r = 5; r < 8; ++r) {
    RowBits bits(width);
    for (std::uint32_t c = 0; c < width; c += 64) {
      bits.words()[c / 64] = rng();
    }
    sub.exec(HostWriteOp{r, bits});
  }
  for (auto _ : state) {
    sub.exec(TraOp{5, 6, 7});
    benchmark::DoNotOptimize(sub);
  }
  state.SetItemsProcessed(state.iterations() * width);
}
BENCHMARK(BM_TraExec)->Arg(64)->Arg(1024)->Arg(65536);

void BM_BulkXor(benchmark::State& state) {
  const auto width = static_cast<std::uint32_t>(state.range(0));
  Subarray sub(16, width);
  for (auto _ : state) {
    bulk_xor(sub, 5, 6, 8);
    benchmark::DoNotOptimize(sub);
  }
  state.SetItemsProcessed(state.iterations() * width);
}
BENCHMARK(BM_BulkXor)->Arg(64)->Arg(4096);

void BM_VAdd(benchmark::State& state) {
  const auto nbits = static_cast<std::uint32_t>(state.range(0));
  Subarray sub(5 + 3 * nbits, 64);
  const VerticalVector x{5, nbits, 64};
  const VerticalVector y{5 + nbits, nbits, 64};
  const VerticalVector out{5 + 2 * nbits, nbits, 64};
  for (auto _ : state) {
    vadd(sub, x, y, out);
    benchmark::DoNotOptimize(sub);
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_VAdd)->Arg(4)->Arg(16)->Arg(64);

void BM_MixtureUnion(benchmark::State& state) {
  const auto kbits = static_cast<std::uint32_t>(state.range(0));
  std::mt19937_64 rng(2);
  Mixture a(kbits), b(kbits);
  for (std::uint64_t v = 0; v < a.universe(); ++v) {
    if (rng() & 1) a.insert(v);
    if (rng() & 2) b.insert(v);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(set_union(a, b));
  }
  state.SetItemsProcessed(state.iterations() * a.universe());
}
BENCHMARK(BM_MixtureUnion)->Arg(8)->Arg(16)->Arg(20);

void BM_RankSelect(benchmark::State& state) {
  std::mt19937_64 rng(3);
  Mixture m(16);
  for (std::uint64_t v = 0; v < m.universe(); ++v) {
    if (rng() & 1) m.insert(v);
  }
  const std::uint64_t card = m.cardinality();
  std::uint64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.rank(m.select(k)));
    k = (k + 997) % card;
  }
}
BENCHMARK(BM_RankSelect);

void BM_LowerExpr(benchmark::State& state) {
  const ExprPtr e = parse_expr("(xor (maj a b c) (and (not d) (or a c)))");
  const std::map<std::string, RowId> bindings{
      {"a", 5}, {"b", 6}, {"c", 7}, {"d", 8}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(lower(*e, bindings, GridShape{32, 64}));
  }
}
BENCHMARK(BM_LowerExpr);

}  // namespace

BENCHMARK_MAIN();
