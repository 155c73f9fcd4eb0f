#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "skald/datagen.hpp"
#include "skald/encoding.hpp"
#include "skald/errors.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace skald;

namespace {

Chunk make_chunk(std::size_t index, std::vector<std::vector<std::string>> rows) {
    Chunk c;
    c.index = index;
    c.name = "chunk_" + std::to_string(index);
    c.header = {"Cat", "Num", "Note"};
    c.rows = std::move(rows);
    return c;
}

} // namespace

TEST_CASE("collect_uniques is the sorted set union across chunks") {
    DatasetSchema schema = support::small_schema(2, 0, 1000, {1, 1001});
    std::vector<Chunk> chunks = {
        make_chunk(0, {{"v0", "5", "n"}, {"v1", "3", "n"}}),
        make_chunk(1, {{"v0", "3", "n"}, {"v1", "9", "n"}}),
    };
    MemoryChunkSource source(chunks);
    CHECK(collect_uniques(source, schema, 1) == std::vector<std::int64_t>{3, 5, 9});

    std::swap(chunks[0], chunks[1]);
    MemoryChunkSource permuted(chunks);
    CHECK(collect_uniques(permuted, schema, 1) == std::vector<std::int64_t>{3, 5, 9});
}

TEST_CASE("collect_uniques skips empty cells and rejects garbage") {
    DatasetSchema schema = support::small_schema(2, 0, 1000, {1, 1001});
    MemoryChunkSource with_empty({make_chunk(0, {{"v0", "", "n"}, {"v1", "7", "n"}})});
    CHECK(collect_uniques(with_empty, schema, 1) == std::vector<std::int64_t>{7});

    MemoryChunkSource bad({make_chunk(0, {{"v0", "sevenish", "n"}})});
    CHECK_THROWS_AS((void)collect_uniques(bad, schema, 1), IngestError);

    MemoryChunkSource many({make_chunk(0, {{"v0", "1", "n"}, {"v0", "2", "n"}, {"v0", "3", "n"}})});
    CHECK_THROWS_AS((void)collect_uniques(many, schema, 1, 2), Error);
}

TEST_CASE("codebook assigns ranks and preserves order") {
    Codebook cb = build_codebook("PIN Code", {560001, 560044, 570025});
    CHECK(cb.size() == 3);
    CHECK(cb.encode(560001) == 0);
    CHECK(cb.encode(560044) == 1);
    CHECK(cb.encode(570025) == 2);
    CHECK(cb.decode(1) == 560044);
    CHECK_THROWS_AS((void)cb.encode(999), CodebookMiss);
    CHECK_THROWS_AS((void)cb.decode(3), CodebookMiss);
    CHECK_THROWS_AS((void)cb.decode(-1), CodebookMiss);

    Codebook single = build_codebook("X", {42});
    CHECK(single.encode(42) == 0);
    CHECK(single.decode(0) == 42);

    CHECK_THROWS_AS((void)build_codebook("X", {}), EmptyDomain);
}

TEST_CASE("codebook round-trips the generator's PIN pool") {
    std::vector<std::int64_t> pool = pin_pool(7);
    std::set<std::int64_t> distinct(pool.begin(), pool.end());
    CHECK(distinct.size() == 1347);

    std::vector<std::int64_t> uniques(distinct.begin(), distinct.end());
    Codebook cb = build_codebook("PIN Code", uniques);
    CHECK(cb.size() == 1347);
    for (std::size_t i = 0; i < uniques.size(); ++i) {
        CHECK(cb.encode(uniques[i]) == static_cast<std::int64_t>(i));
        CHECK(cb.decode(static_cast<std::int64_t>(i)) == uniques[i]);
    }
    // strictly order-preserving: raw a < raw b implies code(a) < code(b)
    for (std::size_t i = 1; i < uniques.size(); ++i)
        CHECK(cb.encode(uniques[i - 1]) < cb.encode(uniques[i]));
}

TEST_CASE("codebook sidecar save and load") {
    fs::path dir = fs::temp_directory_path() / "skald_test_codebook";
    fs::create_directories(dir);
    Codebook cb = build_codebook("PIN Code", {560001, 560044, 570025});
    cb.save(dir / "pin.codebook");
    Codebook back = Codebook::load(dir / "pin.codebook", "PIN Code");
    CHECK(back.inverse == cb.inverse);
    CHECK(back.encode(560044) == 1);
    CHECK(back.qid_name == "PIN Code");
    fs::remove_all(dir);
}

TEST_CASE("should_encode compares domain span to observed values") {
    // dense band: span barely exceeds the number of distinct values
    NumericalLadder pin = support::ladder(560000, 561999, {1, 2000});
    CHECK(!should_encode(pin, 1347, 10.0, false));
    CHECK(should_encode(pin, 1347, 10.0, true)); // flag forces

    NumericalLadder age = support::ladder(19, 85, {1, 67});
    CHECK(!should_encode(age, 67, 10.0, false));

    NumericalLadder sparse = support::ladder(0, 999'999, {1, 1'000'000});
    CHECK(should_encode(sparse, 100, 10.0, false));

    CHECK(!should_encode(sparse, 0, 10.0, false)); // nothing observed
}
