#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "skald/pipeline.hpp"
#include "skald/schema.hpp"

namespace skald {

/// Grid for the comparison harness: data is regenerated per chunk count and
/// both pipelines run for every k.
struct CompareGrid {
    std::vector<std::uint64_t> k_values;
    std::vector<std::uint64_t> chunk_counts;
    std::uint64_t rows_per_chunk = 10000;
    std::uint64_t seed = 7;
    // Bin budget for the comparison runs. The chunking effect is only
    // isolated when the budget admits the same root the per-chunk baseline
    // searches from; desk-scale chunks would otherwise starve the engine.
    std::optional<std::uint64_t> n_ram_override;

    bool operator==(const CompareGrid&) const = default;
};

/// The declarative run configuration: schema, parameters, and I/O locations.
struct ConfigFile {
    DatasetSchema schema;
    std::uint64_t k = 50;
    double suppression_limit = 0.05;
    double sparsity_threshold = 10.0;
    std::optional<std::uint64_t> n_ram_override;
    std::string input_glob;
    std::string output_dir;
    std::optional<CompareGrid> compare;

    bool operator==(const ConfigFile&) const = default;

    PipelineConfig to_pipeline_config() const;
};

std::string serialise_config(const ConfigFile& config);
ConfigFile parse_config(const std::string& json_text); // throws ConfigError
ConfigFile load_config(const std::filesystem::path& path);
void save_config(const ConfigFile& config, const std::filesystem::path& path);

/// A ready-to-edit config matching the example generator's schema.
ConfigFile example_config();

} // namespace skald
