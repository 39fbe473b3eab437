#include "nilflat/bch.hpp"
#include "nilflat/certify.hpp"
#include "nilflat/lemma.hpp"
#include "nilflat/malcev.hpp"
#include "nilflat/tower.hpp"

#include <benchmark/benchmark.h>

using namespace nilflat;

namespace {

VecQ sample(std::size_t n, long salt) {
    VecQ v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Rational(static_cast<long>(i) * 7 - 3 + salt, static_cast<long>(i % 3) + 2);
    return v;
}

void BM_BchProduct(benchmark::State& state) {
    const NilAlgebra a = algebras::filiform(static_cast<std::size_t>(state.range(0)));
    const VecQ x = sample(a.dim(), 1), y = sample(a.dim(), 5);
    for (auto _ : state) benchmark::DoNotOptimize(bch_product(a, x, y));
}
BENCHMARK(BM_BchProduct)->Arg(3)->Arg(4)->Arg(5)->Arg(7);

void BM_SecondKind(benchmark::State& state) {
    const NilAlgebra a = algebras::filiform(static_cast<std::size_t>(state.range(0)));
    const VecQ x = sample(a.dim(), 2);
    for (auto _ : state) benchmark::DoNotOptimize(to_second_kind(a, x));
}
BENCHMARK(BM_SecondKind)->Arg(4)->Arg(6);

void BM_PeelTower(benchmark::State& state) {
    const NilLattice l(algebras::filiform(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(peel_tower(l));
}
BENCHMARK(BM_PeelTower)->Arg(4)->Arg(6);

void BM_CurvatureSampling(benchmark::State& state) {
    const NilAlgebra a = algebras::filiform(4);
    const auto g = LeftInvariantMetric::identity(4);
    LemmaScanConfig cfg;
    cfg.t_grid = {1.0, 0.1, 0.01};
    cfg.samples = static_cast<std::size_t>(state.range(0));
    cfg.threads = static_cast<unsigned>(state.range(1));
    const SubmersionSplit split = make_split(g, Vec::Unit(4, 3));
    const RealAlgebra ra(a);
    for (auto _ : state) benchmark::DoNotOptimize(lemma_scan(ra, g, split, cfg));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.samples * cfg.t_grid.size()));
}
BENCHMARK(BM_CurvatureSampling)->Args({10000, 1})->Args({10000, 4})->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
    const BundleTower t = peel_tower(NilLattice(algebras::filiform(4)));
    CertifyConfig cfg;
    cfg.eps = 1e-3;
    for (auto _ : state) benchmark::DoNotOptimize(certify_almost_flat(t, LeftInvariantMetric::identity(4), cfg));
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
