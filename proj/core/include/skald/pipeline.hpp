#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "skald/chunk_source.hpp"
#include "skald/effective_schema.hpp"
#include "skald/histogram.hpp"
#include "skald/lattice.hpp"
#include "skald/metrics.hpp"
#include "skald/schema.hpp"

namespace skald {

struct PipelineConfig {
    DatasetSchema schema;
    std::uint64_t k = 50;
    double suppression_limit = 0.05;
    double sparsity_threshold = 10.0;
    std::optional<std::uint64_t> n_ram_override;
    std::filesystem::path output_dir; // empty = nothing persisted

    void validate() const; // throws ConfigError
    std::uint64_t bin_budget() const;
};

struct AnonymisationReport {
    GeneralisationNode ram_node;
    GeneralisationNode final_node;
    LossReport loss;
    std::uint64_t nodes_evaluated_phase1 = 0;
    std::uint64_t nodes_evaluated_phase2 = 0;
    std::uint64_t chunks_processed = 0;
    std::uint64_t records_total = 0;
    std::uint64_t records_written = 0;
    std::uint64_t records_suppressed = 0;
    double wall_phase1 = 0, wall_phase2 = 0, wall_phase3 = 0;
};

/// Receives the generalised output chunk-by-chunk.
class OutputSink {
public:
    virtual ~OutputSink() = default;
    virtual void write_chunk(const Chunk& original, const std::vector<std::string>& header,
                             const std::vector<std::vector<std::string>>& rows) = 0;
};

class CsvDirSink final : public OutputSink {
public:
    explicit CsvDirSink(std::filesystem::path dir);
    void write_chunk(const Chunk& original, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) override;

private:
    std::filesystem::path dir_;
};

class MemorySink final : public OutputSink {
public:
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // all chunks concatenated in order
    void write_chunk(const Chunk&, const std::vector<std::string>& hdr,
                     const std::vector<std::vector<std::string>>& out_rows) override {
        header = hdr;
        rows.insert(rows.end(), out_rows.begin(), out_rows.end());
    }
};

struct Phase1Result {
    std::vector<std::optional<Codebook>> codebooks; // one slot per QID
    GeneralisationNode ram_node;
    std::uint64_t bin_budget = 0; // resolved N_RAM (record_bytes "auto" applied)
    std::uint64_t records_total = 0;
    std::uint64_t nodes_evaluated = 0;
    TagState tags; // budget-lattice tags, for inspection
};

/// Pass 1: collect unique values, build codebooks for sparse QIDs, and pick
/// the finest node whose bin count fits the RAM budget.
Phase1Result phase1(const PipelineConfig& config, ChunkSource& source);

struct Phase2Result {
    Histogram root_histogram;
    GeneralisationNode final_node;
    LossReport loss;
    std::uint64_t nodes_evaluated = 0;
    TagState tags;
};

/// Pass 2: build the root histogram and search the lattice above ram_node for
/// the lowest-DM* node satisfying k-anonymity within the suppression limit.
Phase2Result phase2(const PipelineConfig& config, ChunkSource& source, const EffectiveSchema& eff,
                    const GeneralisationNode& ram_node, std::uint64_t bin_budget);

struct Phase3Result {
    std::uint64_t written = 0;
    std::uint64_t suppressed = 0;
};

/// Pass 3: decode, generalise, and emit every record whose class meets k;
/// direct identifiers are dropped, sensitive attributes pass through.
Phase3Result phase3(const PipelineConfig& config, ChunkSource& source, const EffectiveSchema& eff,
                    const Histogram& final_histogram, OutputSink& sink);

/// All three phases; exactly three passes over the source.
AnonymisationReport run(const PipelineConfig& config, ChunkSource& source, OutputSink& sink);

/// Output column layout: every non-direct-identifier column, original order.
std::vector<std::string> output_header(const DatasetSchema& schema);

std::string format_report_text(const AnonymisationReport& report);
std::string format_report_kv(const AnonymisationReport& report);

} // namespace skald
