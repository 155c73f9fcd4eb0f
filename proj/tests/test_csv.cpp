#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "skald/csv.hpp"
#include "skald/errors.hpp"

namespace fs = std::filesystem;
using namespace skald;

namespace {

fs::path temp_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("csv_parse_line handles quoting") {
    CHECK(csv_parse_line("a,b,c") == std::vector<std::string>{"a", "b", "c"});
    CHECK(csv_parse_line("a,,c") == std::vector<std::string>{"a", "", "c"});
    CHECK(csv_parse_line("\"a,b\",c") == std::vector<std::string>{"a,b", "c"});
    CHECK(csv_parse_line("\"he said \"\"hi\"\"\",x") ==
          std::vector<std::string>{"he said \"hi\"", "x"});
    CHECK(csv_parse_line("") == std::vector<std::string>{""});
}

TEST_CASE("csv_format_row quotes only when needed") {
    CHECK(csv_format_row({"a", "b"}) == "a,b");
    CHECK(csv_format_row({"a,b", "c"}) == "\"a,b\",c");
    CHECK(csv_format_row({"say \"hi\""}) == "\"say \"\"hi\"\"\"");
}

TEST_CASE("format then parse round-trips arbitrary fields") {
    std::vector<std::vector<std::string>> rows = {
        {"plain", "with,comma", "with \"quote\"", ""},
        {"", "", ""},
        {"trailing space ", " leading"},
        {"multi,\"mixed\",field"},
    };
    for (const auto& row : rows) CHECK(csv_parse_line(csv_format_row(row)) == row);
}

TEST_CASE("read_csv and write_csv round-trip a table") {
    fs::path dir = temp_dir("skald_test_csv");
    std::vector<std::string> header = {"A", "B,b", "C"};
    std::vector<std::vector<std::string>> rows = {{"1", "x,y", "z"}, {"2", "", "\"q\""}};
    write_csv(dir / "t.csv", header, rows);
    CsvTable table = read_csv(dir / "t.csv");
    CHECK(table.header == header);
    CHECK(table.rows == rows);
    fs::remove_all(dir);
}

TEST_CASE("read_csv on a missing file throws") {
    CHECK_THROWS_AS((void)read_csv("/nonexistent/skald/file.csv"), Error);
}

TEST_CASE("expand_glob matches and sorts") {
    fs::path dir = temp_dir("skald_test_glob");
    for (const char* name : {"chunk_10.csv", "chunk_02.csv", "chunk_01.csv", "other.txt"})
        std::ofstream(dir / name) << "x";

    auto files = expand_glob((dir / "chunk_*.csv").string());
    REQUIRE(files.size() == 3);
    CHECK(files[0].filename() == "chunk_01.csv");
    CHECK(files[1].filename() == "chunk_02.csv");
    CHECK(files[2].filename() == "chunk_10.csv");

    auto one = expand_glob((dir / "chunk_0?.csv").string());
    CHECK(one.size() == 2);

    auto exact = expand_glob((dir / "other.txt").string());
    REQUIRE(exact.size() == 1);
    CHECK(exact[0].filename() == "other.txt");

    CHECK(expand_glob((dir / "missing_*.csv").string()).empty());
    fs::remove_all(dir);
}
