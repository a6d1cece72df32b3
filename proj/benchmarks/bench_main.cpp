#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "hibound/archive.hpp"
#include "hibound/autotune.hpp"
#include "hibound/lossless/pipeline.hpp"
#include "hibound/predictor.hpp"
#include "hibound/reorder.hpp"
#include "hibound_tools/fixtures.hpp"

using namespace hibound;

namespace {

constexpr double kRelBound = 1e-3;

const Field<float>& fixture(std::size_t n) {
  static std::vector<std::pair<std::size_t, Field<float>>> cache;
  for (const auto& [extent, f] : cache) {
    if (extent == n) return f;
  }
  cache.emplace_back(n, tools::make_fixture<float>(tools::FixtureKind::gaussian_mix, Dims::of(n, n, n), 7));
  return cache.back().second;
}

double abs_bound(const Field<float>& f) { return kRelBound * value_range(f); }

void set_field_throughput(benchmark::State& state, const Field<float>& f) {
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(f.byte_size()));
}

void BM_Tune(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  const double eb = abs_bound(f);
  for (auto _ : state) benchmark::DoNotOptimize(tune(f, eb));
  set_field_throughput(state, f);
}

void BM_Decompose(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  const double eb = abs_bound(f);
  const auto config = tune(f, eb);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(f, eb, config));
  set_field_throughput(state, f);
}

void BM_Reconstruct(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  const double eb = abs_bound(f);
  const auto config = tune(f, eb);
  const auto dec = decompose(f, eb, config);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(dec.quantized, eb, config));
  set_field_throughput(state, f);
}

void BM_Reorder(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  const double eb = abs_bound(f);
  const auto dec = decompose(f, eb, tune(f, eb));
  const LevelMap map(f.dims(), anchor_stride_for(f.dims()));
  const auto strategy = static_cast<ReorderStrategy>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(reorder(dec.quantized.codes, map, strategy));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(dec.quantized.codes.size()));
}

std::vector<std::uint8_t> reordered_codes(const Field<float>& f) {
  const double eb = abs_bound(f);
  const auto dec = decompose(f, eb, tune(f, eb));
  return reorder(dec.quantized.codes, LevelMap(f.dims(), anchor_stride_for(f.dims())));
}

const lossless::Pipeline& pipeline_for(std::int64_t mode) {
  return mode == 0 ? lossless::ratio_pipeline() : lossless::throughput_pipeline();
}

void BM_PipelineEncode(benchmark::State& state) {
  const auto codes = reordered_codes(fixture(static_cast<std::size_t>(state.range(0))));
  const auto& pipeline = pipeline_for(state.range(1));
  std::size_t encoded = 0;
  for (auto _ : state) {
    auto out = pipeline.encode(codes);
    encoded = out.size();
    benchmark::DoNotOptimize(out);
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(codes.size()));
  state.counters["ratio"] = static_cast<double>(codes.size()) / static_cast<double>(encoded);
}

void BM_PipelineDecode(benchmark::State& state) {
  const auto codes = reordered_codes(fixture(static_cast<std::size_t>(state.range(0))));
  const auto& pipeline = pipeline_for(state.range(1));
  const auto encoded = pipeline.encode(codes);
  for (auto _ : state) benchmark::DoNotOptimize(pipeline.decode(encoded));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(codes.size()));
}

void BM_Compress(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  const CompressOptions options{state.range(1) == 0 ? LosslessMode::cr : LosslessMode::tp};
  std::size_t bytes = 0;
  for (auto _ : state) {
    auto z = compress(f, {BoundMode::relative, kRelBound}, options);
    bytes = z.size();
    benchmark::DoNotOptimize(z);
  }
  set_field_throughput(state, f);
  state.counters["cr"] = static_cast<double>(f.byte_size()) / static_cast<double>(bytes);
}

void BM_Decompress(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
  const CompressOptions options{state.range(1) == 0 ? LosslessMode::cr : LosslessMode::tp};
  const auto z = compress(f, {BoundMode::relative, kRelBound}, options);
  for (auto _ : state) benchmark::DoNotOptimize(decompress_as<float>(z));
  set_field_throughput(state, f);
}

}  // namespace

BENCHMARK(BM_Tune)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Decompose)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reconstruct)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Reorder)
    ->ArgsProduct({{64, 128}, {static_cast<int>(ReorderStrategy::table), static_cast<int>(ReorderStrategy::closed_form)}})
    ->ArgNames({"n", "strategy"})
    ->Unit(benchmark::kMillisecond);
// mode 0 = ratio pipeline, 1 = throughput pipeline
BENCHMARK(BM_PipelineEncode)->ArgsProduct({{64, 128}, {0, 1}})->ArgNames({"n", "mode"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PipelineDecode)->ArgsProduct({{64, 128}, {0, 1}})->ArgNames({"n", "mode"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Compress)->ArgsProduct({{64, 128}, {0, 1}})->ArgNames({"n", "mode"})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Decompress)->ArgsProduct({{64, 128}, {0, 1}})->ArgNames({"n", "mode"})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
