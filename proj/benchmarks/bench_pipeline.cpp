// Microbenchmarks for the hot paths: windowed estimators, event detection,
// and the full demonstration-to-plan pipeline.
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "itsg/infotheory.hpp"
#include "itsg/interaction.hpp"
#include "itsg/planner.hpp"
#include "itsg/scenegraph.hpp"
#include "itsg/segmentation.hpp"
#include "itsg/synthgen.hpp"

namespace {

using namespace itsg;

std::vector<double> random_window(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  std::vector<double> xs(n);
  for (double& x : xs) x = dist(rng);
  return xs;
}

// A 60 s, 30 Hz scene with ten entities: the letter task plus two idle crates.
DemoScript ten_entity_script() {
  DemoScript script = letter_r_script();
  script.entities.push_back({"crate_1", EntityKind::Object, "crate", {0.8, 0.8, 0.0}, {}});
  script.entities.push_back({"crate_2", EntityKind::Object, "crate", {0.9, 0.8, 0.0}, {}});
  script.duration = 60.0;
  script.noise_sigma = 0.002;
  return script;
}

void BM_Entropy(benchmark::State& state) {
  const auto xs = random_window(static_cast<std::size_t>(state.range(0)), 99);
  const AnalysisConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(entropy(xs, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Entropy)->Arg(31)->Arg(301);

void BM_MutualInformation(benchmark::State& state) {
  const auto xs = random_window(static_cast<std::size_t>(state.range(0)), 7);
  const auto ys = random_window(static_cast<std::size_t>(state.range(0)), 8);
  const AnalysisConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(mutual_information(xs, ys, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MutualInformation)->Arg(31)->Arg(301);

void BM_RenderDemo(benchmark::State& state) {
  const DemoScript script = ten_entity_script();
  for (auto _ : state) benchmark::DoNotOptimize(generate(script));
}
BENCHMARK(BM_RenderDemo)->Unit(benchmark::kMillisecond);

void BM_DetectEvents(benchmark::State& state) {
  const auto [demo, gt] = generate(ten_entity_script());
  const AnalysisConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(detect_events(demo, cfg));
  state.SetItemsProcessed(state.iterations() * demo.frame_count());
}
BENCHMARK(BM_DetectEvents)->Unit(benchmark::kMillisecond);

void BM_BuildTimeline(benchmark::State& state) {
  const auto [demo, gt] = generate(ten_entity_script());
  const AnalysisConfig cfg;
  const auto events = detect_events(demo, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(build_timeline(demo, events));
  state.SetItemsProcessed(state.iterations() * demo.frame_count());
}
BENCHMARK(BM_BuildTimeline)->Unit(benchmark::kMillisecond);

void BM_DemoToPlan(benchmark::State& state) {
  const auto [demo, gt] = generate(ten_entity_script());
  const AnalysisConfig cfg;
  for (auto _ : state) {
    const auto events = detect_events(demo, cfg);
    const auto timeline = build_timeline(demo, events);
    const auto segments = segment(timeline, events, demo, cfg);
    benchmark::DoNotOptimize(emit_plan(timeline, segments, demo, cfg));
  }
  state.SetItemsProcessed(state.iterations() * demo.frame_count());
}
BENCHMARK(BM_DemoToPlan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
