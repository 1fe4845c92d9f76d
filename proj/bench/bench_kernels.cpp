// Serial vs OpenMP batch kernels. Args: {layers, batch rows}; the encoder is the M9-style
// reuploading alternate-embedding model on 2 features (4 qubits) or the credit-card shape
// (5 features, 10 qubits) when the third arg is 1.

#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "qae/kernels.hpp"

namespace {

struct Setup {
  qae::QaeModel model;
  qae::FeatureMatrix batch{2};
};

Setup make_setup(const benchmark::State& state) {
  Setup s;
  auto& enc = s.model.encoder;
  const bool wide = state.range(2) == 1;
  enc.n_features = wide ? 5 : 2;
  enc.embedding = qae::EmbeddingKind::alternate();
  enc.layers = static_cast<int>(state.range(0));
  enc.composition = qae::RotationComposition::parse("YXY");
  enc.reupload = true;
  s.model.theta = qae::ParameterSet::zeros(enc);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  for (double& v : s.model.theta.values()) v = u(rng);
  s.model.trash_qubits = qae::QaeModel::default_trash(enc.n_qubits(), wide ? 3 : 1);
  s.batch = qae::FeatureMatrix(enc.n_features);
  std::vector<double> x(enc.n_features);
  for (int r = 0; r < state.range(1); ++r) {
    for (double& v : x) v = u(rng);
    s.batch.push_back(x);
  }
  return s;
}

void BM_CostGradientSerial(benchmark::State& state) {
  const Setup s = make_setup(state);
  for (auto _ : state) benchmark::DoNotOptimize(qae::serial::cost_and_gradient(s.model, s.batch));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_CostGradientParallel(benchmark::State& state) {
  const Setup s = make_setup(state);
  for (auto _ : state) benchmark::DoNotOptimize(qae::parallel::cost_and_gradient(s.model, s.batch));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_ProbabilitiesSerial(benchmark::State& state) {
  const Setup s = make_setup(state);
  for (auto _ : state) benchmark::DoNotOptimize(qae::serial::probabilities(s.model, s.batch));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_ProbabilitiesParallel(benchmark::State& state) {
  const Setup s = make_setup(state);
  for (auto _ : state) benchmark::DoNotOptimize(qae::parallel::probabilities(s.model, s.batch));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

#define QAE_BENCH_ARGS ArgsProduct({{4, 8}, {100, 1000}, {0, 1}})->Unit(benchmark::kMillisecond)->UseRealTime()

BENCHMARK(BM_CostGradientSerial)->QAE_BENCH_ARGS;
BENCHMARK(BM_CostGradientParallel)->QAE_BENCH_ARGS;
BENCHMARK(BM_ProbabilitiesSerial)->QAE_BENCH_ARGS;
BENCHMARK(BM_ProbabilitiesParallel)->QAE_BENCH_ARGS;

}  // namespace

BENCHMARK_MAIN();
