#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "fixtures.hpp"

using namespace morphc;

namespace {

const char* fixture_name(int index) {
  static const char* names[] = {"french.morph", "polish.morph", "english.morph"};
  return names[index];
}

// Every inflected form of every root.
std::vector<std::string> forms(const testing::Fixture& f) {
  std::vector<std::string> out;
  for (const auto& citation : f.lexicon->citations()) {
    for (const auto& i : testing::inflections_of(f.m(), citation)) out.push_back(i.surface);
  }
  return out;
}

void BM_Compile(benchmark::State& state) {
  std::string text = testing::read_text(testing::fixture_path(fixture_name(static_cast<int>(state.range(0)))));
  ParseResult parsed = parse_description(text);
  for (auto _ : state) {
    CompileOutput out = compile_description(parsed.description);
    benchmark::DoNotOptimize(out.compiled.get());
  }
  state.SetLabel(fixture_name(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Compile)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Analyze(benchmark::State& state) {
  testing::Fixture f = testing::load_fixture(fixture_name(static_cast<int>(state.range(0))));
  auto words = forms(f);
  std::size_t n = 0;
  for (auto _ : state) {
    for (const auto& w : words) benchmark::DoNotOptimize(f.m().analyze(w));
    n += words.size();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(n));
  state.SetLabel(fixture_name(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Analyze)->DenseRange(0, 2);

void BM_AnalyzeCached(benchmark::State& state) {
  testing::Fixture f = testing::load_fixture("french.morph");
  auto words = forms(f);
  AnalysisCache cache(f.m());
  for (const auto& w : words) cache.analyze(w);
  std::size_t n = 0;
  for (auto _ : state) {
    for (const auto& w : words) benchmark::DoNotOptimize(cache.analyze(w));
    n += words.size();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_AnalyzeCached);

void BM_Inflections(benchmark::State& state) {
  testing::Fixture f = testing::load_fixture(fixture_name(static_cast<int>(state.range(0))));
  auto roots = f.lexicon->citations();
  std::size_t n = 0;
  for (auto _ : state) {
    for (const auto& r : roots) n += testing::inflections_of(f.m(), r).size();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(n));
  state.SetLabel(fixture_name(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Inflections)->DenseRange(0, 2);

void BM_AnalyzeDirect(benchmark::State& state) {
  testing::Fixture f = testing::load_fixture("french.morph");
  FeatureVector top = FeatureVector::top(f.c().orth);
  for (auto _ : state) benchmark::DoNotOptimize(analyze_direct(U"chère", f.c().rules, top));
}
BENCHMARK(BM_AnalyzeDirect);

}  // namespace

BENCHMARK_MAIN();
