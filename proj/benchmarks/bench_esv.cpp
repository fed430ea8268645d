#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>

#include "esv/forecast.hpp"
#include "esv/pipeline.hpp"
#include "esv/scenario.hpp"
#include "esv/weights.hpp"

namespace {

esv::EvaluationMatrix random_matrix(std::size_t m, std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.01, 10.0);
  std::vector<double> data(m * n);
  for (double& v : data) v = u(rng);
  return esv::EvaluationMatrix(m, n, std::move(data));
}

void BM_EntropyWeights(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(esv::entropy_report(m));
}
BENCHMARK(BM_EntropyWeights)->Args({5, 20})->Args({50, 20})->Args({500, 100});

void BM_RunPipeline(benchmark::State& state) {
  const esv::Scenario s = esv::load_scenario(std::filesystem::path(ESV_BENCH_DATA_DIR) / "city_l.scenario");
  const esv::RunContext ctx{[] { return std::string("2000-01-01T00:00:00Z"); }};
  for (auto _ : state) benchmark::DoNotOptimize(esv::run_pipeline(s, ctx));
}
BENCHMARK(BM_RunPipeline);

void BM_LstmStep(benchmark::State& state) {
  const auto h = static_cast<std::size_t>(state.range(0));
  const esv::LstmCell cell = esv::LstmCell::random(1, h, 3, 0.3);
  const double x[] = {0.5};
  esv::LstmState s = esv::LstmState::zeros(h);
  for (auto _ : state) {
    s = esv::lstm_step(x, s, cell);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_LstmStep)->Arg(3)->Arg(6)->Arg(32);

void BM_WindowLossGradient(benchmark::State& state) {
  const esv::LstmModel model = esv::LstmModel::random(static_cast<std::size_t>(state.range(0)), 5, 0.3);
  const std::vector<double> window = {0.1, 0.4, 0.35, 0.8};
  std::vector<double> grad;
  for (auto _ : state) benchmark::DoNotOptimize(esv::window_loss(model, window, 0.9, &grad));
}
BENCHMARK(BM_WindowLossGradient)->Arg(6)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
