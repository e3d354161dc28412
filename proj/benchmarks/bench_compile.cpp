#include <benchmark/benchmark.h>

#include "evatlas/compile.hpp"
#include "evatlas/fixtures.hpp"

namespace {

using namespace evatlas;

void BM_compile_corpus(benchmark::State& state) {
    const auto corpus = make_fixture_corpus(1);
    CompileOptions options;
    options.jobs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        Atlas atlas = compile_corpus(corpus.cards, corpus.config, options);
        benchmark::DoNotOptimize(atlas);
    }
}
BENCHMARK(BM_compile_corpus)->Arg(1)->Arg(4);

void BM_digest(benchmark::State& state) {
    const auto corpus = make_fixture_corpus(1);
    for (auto _ : state) {
        auto digest = corpus_digest(corpus.cards, corpus.config);
        benchmark::DoNotOptimize(digest);
    }
}
BENCHMARK(BM_digest);

} // namespace

BENCHMARK_MAIN();
