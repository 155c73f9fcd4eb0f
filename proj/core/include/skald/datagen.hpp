#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "skald/chunk_source.hpp"
#include "skald/schema.hpp"

namespace skald {

/// Same recipe -> byte-identical output; chunks derive independent seeds.
struct GeneratorRecipe {
    std::uint64_t seed = 1;
    std::uint64_t rows_per_chunk = 1000;
    std::uint64_t num_chunks = 1;
};

/// The fixed pool of 1347 distinct PIN codes in the 560000 band.
std::vector<std::int64_t> pin_pool(std::uint64_t seed);

Chunk generate_chunk(const GeneratorRecipe& recipe, std::uint64_t chunk_index);

/// Writes chunk_000.csv .. chunk_NNN.csv plus a recipe sidecar.
std::vector<std::filesystem::path> generate(const GeneratorRecipe& recipe,
                                            const std::filesystem::path& out_dir);

/// In-memory variant for tests.
std::vector<Chunk> generate_chunks(const GeneratorRecipe& recipe);

/// Schema matching the generator: hierarchies for Blood Group (8/4/1) and
/// Profession (16/4/2/1), ladders for Age, BMI, and the encoded PIN Code.
DatasetSchema example_schema();

} // namespace skald
