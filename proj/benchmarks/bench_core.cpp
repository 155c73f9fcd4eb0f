// Microbenchmarks for the hot paths: histogram construction, re-binning to a
// coarser node, and the lattice search.

#include <benchmark/benchmark.h>

#include "skald/datagen.hpp"
#include "skald/histogram.hpp"
#include "skald/lattice.hpp"
#include "skald/pipeline.hpp"

using namespace skald;

namespace {

struct Fixture {
    PipelineConfig pc;
    MemoryChunkSource source;
    EffectiveSchema eff;
    Phase1Result p1;

    explicit Fixture(std::uint64_t rows)
        : source(generate_chunks({7, rows, 4})) {
        pc.schema = example_schema();
        pc.schema.chunk_rows = static_cast<std::int64_t>(rows);
        pc.k = 10;
        pc.n_ram_override = 1'000'000;
        p1 = phase1(pc, source);
        eff = make_effective_schema(pc.schema, p1.codebooks);
    }
};

Fixture& fixture() {
    static Fixture f(5'000); // 20,000 records over 4 chunks
    return f;
}

void BM_build_histogram(benchmark::State& state) {
    Fixture& f = fixture();
    for (auto _ : state) {
        Histogram h = build_histogram(f.source, f.p1.ram_node, f.eff, f.p1.bin_budget);
        benchmark::DoNotOptimize(h.total);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 20'000);
}
BENCHMARK(BM_build_histogram);

void BM_merge_to(benchmark::State& state) {
    Fixture& f = fixture();
    Histogram root = build_histogram(f.source, f.p1.ram_node, f.eff, f.p1.bin_budget);
    GeneralisationNode target = f.eff.top_node();
    for (std::size_t i = 0; i < target.levels.size(); ++i)
        target.levels[i] = std::max(f.p1.ram_node.levels[i], target.levels[i] - 1);
    for (auto _ : state) {
        Histogram merged = merge_to(root, target, f.eff);
        benchmark::DoNotOptimize(merged.total);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(root.counts.size()));
}
BENCHMARK(BM_merge_to);

void BM_ola_search(benchmark::State& state) {
    Fixture& f = fixture();
    Histogram root = build_histogram(f.source, f.p1.ram_node, f.eff, f.p1.bin_budget);
    Lattice lattice(f.p1.ram_node, f.eff.top_node(), f.eff.importance_order);
    for (auto _ : state) {
        SearchResult r = ola_search(lattice, [&](const GeneralisationNode& n) {
            Histogram merged = merge_to(root, n, f.eff);
            return is_k_anonymous(merged, f.pc.k, f.pc.suppression_limit).pass;
        });
        benchmark::DoNotOptimize(r.minimal_passing.size());
    }
}
BENCHMARK(BM_ola_search);

void BM_lattice_search_synthetic(benchmark::State& state) {
    // predicate cost excluded: measures tagging and bookkeeping alone
    Lattice lattice({{1, 1, 1, 1}}, {{8, 8, 8, 8}}, {0, 1, 2, 3});
    for (auto _ : state) {
        SearchResult r = ola_search(lattice, [](const GeneralisationNode& n) {
            return n.levels[0] + n.levels[1] + n.levels[2] + n.levels[3] >= 18;
        });
        benchmark::DoNotOptimize(r.tags.evaluated_count);
    }
}
BENCHMARK(BM_lattice_search_synthetic);

} // namespace

BENCHMARK_MAIN();
