#include "skald/chunk_source.hpp"

#include "skald/csv.hpp"
#include "skald/errors.hpp"

namespace skald {

CsvFileChunkSource::CsvFileChunkSource(std::vector<std::filesystem::path> files)
    : files_(std::move(files)) {
    if (files_.empty()) throw EmptyDataset("no input chunk files");
}

std::vector<std::string> CsvFileChunkSource::header() const {
    return read_csv(files_.front()).header;
}

void CsvFileChunkSource::iterate(const std::function<void(const Chunk&)>& fn) {
    for (std::size_t i = 0; i < files_.size(); ++i) {
        CsvTable table = read_csv(files_[i]);
        Chunk chunk;
        chunk.index = i;
        chunk.name = files_[i].stem().string();
        chunk.header = std::move(table.header);
        chunk.rows = std::move(table.rows);
        fn(chunk);
    }
}

} // namespace skald
