#include "skald/encoding.hpp"

#include <fstream>
#include <set>

#include "skald/errors.hpp"
#include "skald/hierarchy.hpp"

namespace skald {

std::int64_t Codebook::encode(std::int64_t raw_units) const {
    auto it = forward.find(raw_units);
    if (it == forward.end())
        throw CodebookMiss("value " + std::to_string(raw_units) + " not in codebook for '" +
                           qid_name + "'");
    return it->second;
}

std::int64_t Codebook::decode(std::int64_t code) const {
    if (code < 0 || static_cast<std::size_t>(code) >= inverse.size())
        throw CodebookMiss("code " + std::to_string(code) + " not in codebook for '" +
                           qid_name + "'");
    return inverse[static_cast<std::size_t>(code)];
}

void Codebook::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    for (std::size_t code = 0; code < inverse.size(); ++code)
        out << inverse[code] << ',' << code << '\n';
}

Codebook Codebook::load(const std::filesystem::path& path, std::string qid_name) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    Codebook cb;
    cb.qid_name = std::move(qid_name);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw Error("malformed codebook line: " + line);
        std::int64_t raw = std::stoll(line.substr(0, comma));
        std::int64_t code = std::stoll(line.substr(comma + 1));
        if (code != static_cast<std::int64_t>(cb.inverse.size()))
            throw Error("codebook codes out of order in " + path.string());
        cb.inverse.push_back(raw);
        cb.forward.emplace(raw, code);
    }
    return cb;
}

std::vector<std::int64_t> collect_uniques(ChunkSource& source, const DatasetSchema& schema,
                                          std::size_t qid_index, std::size_t max_uniques) {
    const QidSpec& qid = schema.qids.at(qid_index);
    if (!qid.ladder) throw ConfigError("collect_uniques: '" + qid.name + "' is not numerical");
    const std::size_t col = schema.qid_columns().at(qid_index);
    const std::int64_t scale = qid.ladder->unit_scale;

    std::set<std::int64_t> uniques;
    source.for_each_chunk([&](const Chunk& chunk) {
        for (std::size_t r = 0; r < chunk.rows.size(); ++r) {
            const auto& row = chunk.rows[r];
            if (col >= row.size()) continue;
            const std::string& cell = row[col];
            if (cell.empty()) continue;
            auto units = parse_units(cell, scale);
            if (!units)
                throw IngestError("unparseable cell '" + cell + "' at chunk " +
                                  std::to_string(chunk.index) + " row " + std::to_string(r) +
                                  " column '" + qid.name + "'");
            uniques.insert(*units);
            if (uniques.size() > max_uniques)
                throw Error("unique-value cap exceeded for '" + qid.name + "'");
        }
    });
    return {uniques.begin(), uniques.end()};
}

Codebook build_codebook(std::string qid_name, const std::vector<std::int64_t>& uniques) {
    if (uniques.empty()) throw EmptyDomain("cannot build codebook from empty value set");
    Codebook cb;
    cb.qid_name = std::move(qid_name);
    cb.inverse = uniques;
    cb.forward.reserve(uniques.size());
    for (std::size_t code = 0; code < uniques.size(); ++code)
        cb.forward.emplace(uniques[code], static_cast<std::int64_t>(code));
    return cb;
}

bool should_encode(const NumericalLadder& ladder, std::uint64_t unique_count,
                   double sparsity_threshold, bool force) {
    if (force) return true;
    if (unique_count == 0) return false;
    double span = static_cast<double>(ladder.domain_max - ladder.domain_min + 1);
    return span / static_cast<double>(unique_count) > sparsity_threshold;
}

} // namespace skald
