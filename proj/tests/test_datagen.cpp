#include <doctest.h>

#include <filesystem>
#include <set>

#include "skald/csv.hpp"
#include "skald/datagen.hpp"
#include "skald/hierarchy.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace skald;

TEST_CASE("generated chunks have the documented shape") {
    GeneratorRecipe recipe{7, 500, 3};
    std::vector<Chunk> chunks = generate_chunks(recipe);
    REQUIRE(chunks.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(chunks[i].index == i);
        CHECK(chunks[i].rows.size() == 500);
        CHECK(chunks[i].header ==
              std::vector<std::string>{"Patient ID", "Name", "Address", "Blood Group",
                                       "Profession", "Age", "BMI", "PIN Code",
                                       "Health Condition"});
        for (const auto& row : chunks[i].rows) CHECK(row.size() == 9);
    }
}

TEST_CASE("generated values stay inside the schema domains") {
    DatasetSchema schema = example_schema();
    const auto& bg = *schema.qids[0].hierarchy;
    const auto& prof = *schema.qids[1].hierarchy;
    const auto& age = *schema.qids[2].ladder;
    const auto& bmi = *schema.qids[3].ladder;
    const auto& pin = *schema.qids[4].ladder;

    for (std::uint64_t seed : {1ULL, 99ULL}) {
        for (const Chunk& chunk : generate_chunks({seed, 400, 2})) {
            for (const auto& row : chunk.rows) {
                CHECK(bg.level_table(1).value_to_label_id.count(row[3]) == 1);
                CHECK(prof.level_table(1).value_to_label_id.count(row[4]) == 1);
                auto age_units = parse_units(row[5], age.unit_scale);
                REQUIRE(age_units.has_value());
                CHECK(*age_units >= age.domain_min);
                CHECK(*age_units <= age.domain_max);
                auto bmi_units = parse_units(row[6], bmi.unit_scale);
                REQUIRE(bmi_units.has_value());
                CHECK(*bmi_units >= bmi.domain_min);
                CHECK(*bmi_units <= bmi.domain_max);
                auto pin_units = parse_units(row[7], pin.unit_scale);
                REQUIRE(pin_units.has_value());
                CHECK(*pin_units >= pin.domain_min);
                CHECK(*pin_units <= pin.domain_max);
                CHECK(!row[8].empty());
            }
        }
    }
}

TEST_CASE("a full generation observes exactly 1347 distinct sparse codes") {
    std::set<std::string> pins;
    for (const Chunk& chunk : generate_chunks({7, 1000, 2}))
        for (const auto& row : chunk.rows) pins.insert(row[7]);
    CHECK(pins.size() == 1347);
}

TEST_CASE("the same recipe reproduces byte-identical chunks") {
    GeneratorRecipe recipe{42, 300, 2};
    std::vector<Chunk> a = generate_chunks(recipe);
    std::vector<Chunk> b = generate_chunks(recipe);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].rows == b[i].rows);
        CHECK(a[i].name == b[i].name);
    }
    // chunks can also be produced independently
    Chunk solo = generate_chunk(recipe, 1);
    CHECK(solo.rows == a[1].rows);

    std::vector<Chunk> other = generate_chunks({43, 300, 2});
    CHECK(other[0].rows != a[0].rows);
}

TEST_CASE("generate writes sorted chunk files that parse back") {
    fs::path dir = fs::temp_directory_path() / "skald_test_datagen";
    fs::remove_all(dir);
    GeneratorRecipe recipe{7, 50, 3};
    auto files = generate(recipe, dir);
    REQUIRE(files.size() == 3);
    CHECK(files[0].filename() == "chunk_000.csv");
    CHECK(files[2].filename() == "chunk_002.csv");
    CHECK(expand_glob((dir / "chunk_*.csv").string()) == files);

    std::vector<Chunk> expect = generate_chunks(recipe);
    for (std::size_t i = 0; i < files.size(); ++i) {
        CsvTable table = read_csv(files[i]);
        CHECK(table.header == expect[i].header);
        CHECK(table.rows == expect[i].rows);
    }
    fs::remove_all(dir);
}

TEST_CASE("example schema validates and matches the generator header") {
    DatasetSchema schema = example_schema();
    CHECK(validate_schema(schema).empty());
    Chunk chunk = generate_chunk({1, 1, 1}, 0);
    std::vector<std::string> names;
    for (const auto& [name, kind] : schema.columns) names.push_back(name);
    CHECK(names == chunk.header);
    CHECK(schema.qids[4].encode); // the sparse column is always re-encoded
}
