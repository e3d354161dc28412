#include <benchmark/benchmark.h>

#include "evatlas/compile.hpp"
#include "evatlas/fixtures.hpp"
#include "evatlas/query.hpp"

namespace {

using namespace evatlas;

const Atlas& fixture_atlas() {
    static const Atlas atlas = [] {
        const auto corpus = make_fixture_corpus(1);
        return compile_corpus(corpus.cards, corpus.config);
    }();
    return atlas;
}

void BM_q_do(benchmark::State& state) {
    const Atlas& atlas = fixture_atlas();
    QuerySpec spec;
    spec.kind = QueryKind::Do;
    spec.x_id = "sglt2i";
    spec.y_id = "mace";
    for (auto _ : state) {
        AnswerObject ans = q_do(atlas, spec);
        benchmark::DoNotOptimize(ans);
    }
}
BENCHMARK(BM_q_do);

void BM_q_med(benchmark::State& state) {
    const Atlas& atlas = fixture_atlas();
    QuerySpec spec;
    spec.kind = QueryKind::Med;
    spec.x_id = "med-x";
    spec.m_id = "med-m";
    spec.y_id = "med-y";
    for (auto _ : state) {
        MediationAnswer ans = q_med(atlas, spec);
        benchmark::DoNotOptimize(ans);
    }
}
BENCHMARK(BM_q_med);

} // namespace
