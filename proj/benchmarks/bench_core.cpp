#include "qkdsc/attack.hpp"
#include "qkdsc/decoy.hpp"
#include "qkdsc/effective_error.hpp"
#include "qkdsc/qmath.hpp"
#include "qkdsc/sweep.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace qkdsc;

ComplexMatrix random_hermitian(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Complex{dist(rng), dist(rng)};
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return h;
}

void BM_HermitianEigenvalues(benchmark::State& state) {
    std::mt19937 rng(1);
    const auto h = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigenvalues(h));
}
BENCHMARK(BM_HermitianEigenvalues)->Arg(4)->Arg(8)->Arg(16);

void BM_VnEntropy16(benchmark::State& state) {
    const auto pipeline =
        attack_pipeline(ClonerSetting{0.4}, SideChannelGram::uniform(0.95));
    const auto rho0 = eve_state(ClonerSetting{0.4}, 0, Basis::X);
    const auto sc = embed_states(SideChannelGram::uniform(0.95));
    const DensityMatrix joint =
        DensityMatrix(kron(rho0.matrix(), sc.states[0].projector()));
    benchmark::DoNotOptimize(pipeline.error.q_bob_delta);
    for (auto _ : state) benchmark::DoNotOptimize(vn_entropy(joint));
}
BENCHMARK(BM_VnEntropy16);

void BM_AttackPipeline(benchmark::State& state) {
    const SideChannelGram gram = SideChannelGram::uniform(0.98);
    for (auto _ : state)
        benchmark::DoNotOptimize(attack_pipeline(ClonerSetting{0.45}, gram));
}
BENCHMARK(BM_AttackPipeline);

void BM_RatePoint(benchmark::State& state) {
    ChannelParams p;
    p.length_km = 80.0;
    for (auto _ : state) benchmark::DoNotOptimize(key_rate_decoy(p, 0.02, 0.02));
}
BENCHMARK(BM_RatePoint);

void BM_FullSweep(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.cloner_eta = 0.45;
    cfg.uniform_overlap = 0.98;
    cfg.sweep = SweepRange{0.0, 200.0, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(cfg));
}
BENCHMARK(BM_FullSweep);

}  // namespace
