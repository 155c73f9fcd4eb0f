#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace skald {

struct Chunk {
    std::size_t index = 0;
    std::string name; // output files mirror this stem
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Re-iterable source of chunks. Each for_each_chunk call is one full pass
/// over the data; passes() counts them (the pipeline makes exactly three).
class ChunkSource {
public:
    virtual ~ChunkSource() = default;
    virtual std::size_t chunk_count() const = 0;
    virtual std::vector<std::string> header() const = 0;

    void for_each_chunk(const std::function<void(const Chunk&)>& fn) {
        ++passes_;
        iterate(fn);
    }

    std::size_t passes() const { return passes_; }

protected:
    virtual void iterate(const std::function<void(const Chunk&)>& fn) = 0;

private:
    std::size_t passes_ = 0;
};

class MemoryChunkSource final : public ChunkSource {
public:
    explicit MemoryChunkSource(std::vector<Chunk> chunks) : chunks_(std::move(chunks)) {}

    std::size_t chunk_count() const override { return chunks_.size(); }
    std::vector<std::string> header() const override {
        return chunks_.empty() ? std::vector<std::string>{} : chunks_.front().header;
    }

protected:
    void iterate(const std::function<void(const Chunk&)>& fn) override {
        for (const auto& c : chunks_) fn(c);
    }

private:
    std::vector<Chunk> chunks_;
};

/// Streams chunk CSV files one at a time; only one chunk is resident per step.
class CsvFileChunkSource final : public ChunkSource {
public:
    explicit CsvFileChunkSource(std::vector<std::filesystem::path> files);

    std::size_t chunk_count() const override { return files_.size(); }
    std::vector<std::string> header() const override;
    const std::vector<std::filesystem::path>& files() const { return files_; }

protected:
    void iterate(const std::function<void(const Chunk&)>& fn) override;

private:
    std::vector<std::filesystem::path> files_;
};

} // namespace skald
