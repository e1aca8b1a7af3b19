#include <benchmark/benchmark.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "qldpc/bitmatrix.hpp"
#include "qldpc/bp.hpp"
#include "qldpc/circulant.hpp"
#include "qldpc/osd.hpp"
#include "qldpc/pauli.hpp"
#include "qldpc/registry.hpp"
#include "qldpc/simulate.hpp"

using namespace qldpc;

namespace {

const CssCode& code(const std::string& id) {
  static std::map<std::string, CssCode> cache;
  auto it = cache.find(id);
  if (it == cache.end()) it = cache.emplace(id, build_registry_code(id)).first;
  return it->second;
}

const char* kIds[] = {"A1", "B2", "B3", "C2"};

void BM_Rank(benchmark::State& state) {
  const CssCode& c = code(kIds[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(rank(c.hx));
  state.SetLabel(kIds[state.range(0)]);
}
BENCHMARK(BM_Rank)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_QcRank(benchmark::State& state) {
  const auto& spec = std::get<GhpSpec>(registry("B2").spec);
  for (auto _ : state) benchmark::DoNotOptimize(qc_rank(spec.a));
}
BENCHMARK(BM_QcRank)->Unit(benchmark::kMicrosecond);

void BM_Factor(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(factor_xl_minus_1(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Factor)->Arg(127)->Arg(511)->Arg(1023);

void BM_Sample(benchmark::State& state) {
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_depolarizing(1270, {0.1}, rng));
}
BENCHMARK(BM_Sample);

void BM_BpDecode(benchmark::State& state) {
  const CssCode& c = code(kIds[state.range(0)]);
  const TannerGraph g = build_graph(c);
  BpDecoder dec(g, {});
  const double p = static_cast<double>(state.range(1)) / 100.0;
  const auto prior = depolarizing_prior(c.n(), p);
  std::vector<BitVector> syndromes;
  for (std::uint64_t i = 0; i < 64; ++i) syndromes.push_back(g.syndrome(trial_error(c.n(), p, 1, i)));
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(dec.decode(syndromes[k++ % syndromes.size()], prior));
  state.SetLabel(kIds[state.range(0)]);
}
BENCHMARK(BM_BpDecode)->Args({1, 6})->Args({1, 10})->Args({2, 10})->Unit(benchmark::kMicrosecond);

void BM_Osd(benchmark::State& state) {
  const CssCode& c = code("B2");
  const BitMatrix hb = css_stabilizer_binary(c);
  const TannerGraph g = build_graph(c);
  BpDecoder dec(g, {});
  const auto prior = depolarizing_prior(c.n(), 0.1);
  // A syndrome on which BP fails, so OSD sees a realistic ordering.
  BitVector s;
  BpResult r;
  for (std::uint64_t i = 0;; ++i) {
    s = g.syndrome(trial_error(c.n(), 0.1, 2, i));
    r = dec.decode(s, prior);
    if (!r.converged) break;
  }
  const auto order = reliability_order(r.soft);
  const auto w = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qosd_w(hb, s, r.hard, order, w));
}
BENCHMARK(BM_Osd)->Arg(0)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Osd0Simplified(benchmark::State& state) {
  const CssCode& c = code("B2");
  const BitMatrix hb = css_stabilizer_binary(c);
  Rng rng(3);
  BitVector e(hb.cols());
  for (std::size_t i = 0; i < e.size(); ++i) e.set(i, uniform_below(rng, 20) == 0);
  const BitVector s = hb * e;
  std::vector<std::size_t> order(hb.cols());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(osd_0_simplified(hb, s, BitVector(hb.cols()), order));
}
BENCHMARK(BM_Osd0Simplified)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
