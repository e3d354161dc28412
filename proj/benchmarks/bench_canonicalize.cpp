#include <benchmark/benchmark.h>

#include "evatlas/canonicalize.hpp"
#include "evatlas/fixtures.hpp"

#include <variant>

namespace {

using namespace evatlas;

std::vector<EvidenceObject> corpus_objects() {
    std::vector<EvidenceObject> objects;
    for (const auto& card : make_fixture_corpus(1).cards)
        objects.insert(objects.end(), card.objects.begin(), card.objects.end());
    return objects;
}

void BM_canonicalize(benchmark::State& state) {
    const auto objects = corpus_objects();
    const BuildConfig cfg = BuildConfig::defaults();
    std::size_t i = 0;
    for (auto _ : state) {
        auto result = canonicalize(objects[i % objects.size()], cfg);
        benchmark::DoNotOptimize(result);
        ++i;
    }
}
BENCHMARK(BM_canonicalize);

void BM_roundtrip(benchmark::State& state) {
    const auto objects = corpus_objects();
    const BuildConfig cfg = BuildConfig::defaults();
    const auto claim = std::get<CanonicalClaim>(canonicalize(objects.front(), cfg));
    for (auto _ : state) {
        auto object = reconstruct(claim);
        benchmark::DoNotOptimize(object);
    }
}
BENCHMARK(BM_roundtrip);

} // namespace
