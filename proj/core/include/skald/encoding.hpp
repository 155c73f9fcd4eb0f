#pragma once

#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <vector>

#include "skald/chunk_source.hpp"
#include "skald/schema.hpp"

namespace skald {

/// Order-preserving dense re-encoding of one sparse numerical QID.
/// Codes are 0..size()-1; inverse[code] gives back the raw value in units.
struct Codebook {
    std::string qid_name;
    std::vector<std::int64_t> inverse;
    std::unordered_map<std::int64_t, std::int64_t> forward;

    std::size_t size() const { return inverse.size(); }

    std::int64_t encode(std::int64_t raw_units) const; // throws CodebookMiss
    std::int64_t decode(std::int64_t code) const;      // throws CodebookMiss

    /// Sidecar format: one "raw,code" line per entry.
    void save(const std::filesystem::path& path) const;
    static Codebook load(const std::filesystem::path& path, std::string qid_name);
};

/// Distinct values (in units) of one numerical QID across all chunks,
/// ascending. Empty cells are skipped; unparseable cells raise IngestError.
/// `max_uniques` guards against unbounded growth.
std::vector<std::int64_t> collect_uniques(ChunkSource& source, const DatasetSchema& schema,
                                          std::size_t qid_index,
                                          std::size_t max_uniques = 10'000'000);

Codebook build_codebook(std::string qid_name, const std::vector<std::int64_t>& uniques);

/// True when the domain span exceeds `sparsity_threshold` times the number of
/// observed values, or when the QID's encode flag forces it.
bool should_encode(const NumericalLadder& ladder, std::uint64_t unique_count,
                   double sparsity_threshold, bool force);

} // namespace skald
