// Microbenchmarks for the hot paths: the design objective and its gradient,
// block detection, reference tracking, the closed-form coding gain, Eve's
// attack objective and a full simulated frame.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "ndstc/codebooks.hpp"
#include "ndstc/projection.hpp"
#include "ndstc/random_matrix.hpp"
#include "ndstc/rng.hpp"
#include "ndstc/security.hpp"
#include "ndstc/transceiver.hpp"

namespace {

using namespace ndstc;

std::vector<double> bench_theta(std::size_t dim) {
  RngStream rng(0xbe9c, dim);
  std::vector<double> theta(dim, 0.0);
  for (std::size_t i = 1; i < dim; ++i)
    theta[i] = 2.0 * std::numbers::pi * rng.next_double();
  return theta;
}

void BM_DesignObjectiveValue(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const DesignObjective obj(dim, 4);
  const auto theta = bench_theta(dim);
  for (auto _ : state) benchmark::DoNotOptimize(obj.value(theta));
}
BENCHMARK(BM_DesignObjectiveValue)->Arg(16)->Arg(64)->Arg(256);

void BM_DesignObjectiveGrad(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const DesignObjective obj(dim, 4);
  const auto theta = bench_theta(dim);
  std::vector<double> grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(obj.value_grad(theta, grad));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_DesignObjectiveGrad)->Arg(16)->Arg(64)->Arg(256);

void BM_CodingGain(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const CMatrix e1 = expand_time(e1_from_theta(bench_theta(dim)), 1, dim);
  for (auto _ : state) benchmark::DoNotOptimize(coding_gain(e1, 4));
}
BENCHMARK(BM_CodingGain)->Arg(16)->Arg(64);

void BM_DetectBlock(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const Codebook cb = Codebook::adsm(dim, 4);
  const CMatrix e1 = expand_time(e1_from_theta(bench_theta(dim)), 1, dim);
  RngStream rng(0xbe9c, 7);
  const CMatrix yhat = gaussian_matrix(rng, 2, dim);
  const CMatrix y = gaussian_matrix(rng, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(detect_block(cb, yhat, y, e1));
}
BENCHMARK(BM_DetectBlock)->Arg(16)->Arg(64);

void BM_UpdateReference(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const Codebook cb = Codebook::adsm(dim, 4);
  const CMatrix e1 = expand_time(e1_from_theta(bench_theta(dim)), 1, dim);
  RngStream rng(0xbe9c, 8);
  const CMatrix yhat0 = gaussian_matrix(rng, 2, dim);
  const CMatrix y = gaussian_matrix(rng, 2, 1);
  const CodewordToken t = cb.token_from_bits(3);
  for (auto _ : state) {
    CMatrix yhat = yhat0;
    benchmark::DoNotOptimize(update_reference(cb, yhat, y, t, e1, 0.1));
  }
}
BENCHMARK(BM_UpdateReference)->Arg(16)->Arg(64);

void BM_EveObjectiveGrad(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  RngStream rng(0xbe9c, 9);
  std::vector<EveObservation> obs(1);
  obs[0].g = gaussian_matrix(rng, 2, dim);
  obs[0].y = gaussian_matrix(rng, 2, 1);
  const EveObjective obj(&obs, dim, 1, 4, 1.0);
  const auto theta = bench_theta(dim);
  std::vector<double> grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(obj.value_grad(theta, grad));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_EveObjectiveGrad)->Arg(16)->Arg(32);

void BM_SimulateFrame(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  const Codebook cb = Codebook::adsm(dim, 4);
  KeySchedule ks;
  ks.dim = dim;
  ks.nb = 2;
  ks.opts.restarts = 2;
  const CMatrix basis = derive_projection(0xbe9c, ks).basis;
  FrameConfig cfg;
  cfg.snr_db = 12.0;
  std::uint64_t frame = 0;
  RngStream rng(0xbe9c, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        simulate_frame(cb, basis, nullptr, cfg, rng.derive(frame++)));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_SimulateFrame)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_OptimizeProjection(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  DescentOptions opts;
  opts.restarts = 1;
  std::uint64_t start = 0;
  for (auto _ : state) {
    RngStream rng(0xbe9c, 11 + start++);
    benchmark::DoNotOptimize(optimize_projection(dim, 4, opts, rng));
  }
}
BENCHMARK(BM_OptimizeProjection)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
