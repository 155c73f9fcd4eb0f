#pragma once

#include <cstdint>
#include <vector>

#include "skald/chunk_source.hpp"
#include "skald/effective_schema.hpp"
#include "skald/metrics.hpp"
#include "skald/pipeline.hpp"

namespace skald {

/// The comparator regime: each chunk anonymised on its own with the same
/// optimal lattice search, as a tool without a global view would do.
struct ChunkBaselineResult {
    std::size_t chunk_index = 0;
    GeneralisationNode node;
    LossReport loss;
    std::uint64_t total = 0;
};

struct BaselineReport {
    std::vector<ChunkBaselineResult> chunks;
    std::uint64_t dm_star_total = 0;    // sum over chunks; classes never merge across chunks
    std::uint64_t suppressed_total = 0;
    std::uint64_t records_total = 0;
};

/// Globally optimal search on one chunk, rooted at the finest node (a single
/// chunk fits in RAM, so no bin budget applies).
ChunkBaselineResult per_chunk_anonymise(const Chunk& chunk, const PipelineConfig& config,
                                        const EffectiveSchema& eff);

BaselineReport baseline_run(ChunkSource& source, const PipelineConfig& config,
                            const EffectiveSchema& eff);

std::string format_baseline_report(const BaselineReport& report);

} // namespace skald
