#include "skald/baseline.hpp"

#include <sstream>

#include "skald/errors.hpp"
#include "skald/lattice.hpp"

namespace skald {

ChunkBaselineResult per_chunk_anonymise(const Chunk& chunk, const PipelineConfig& config,
                                        const EffectiveSchema& eff) {
    GeneralisationNode root_node = eff.root_node();
    std::uint64_t max_entries = chunk.rows.size() + 1;
    Histogram root = build_histogram(chunk, root_node, eff, max_entries);
    if (root.total == 0) throw EmptyDataset("chunk " + std::to_string(chunk.index) + " is empty");

    Lattice lattice(root_node, eff.top_node(), eff.importance_order);
    SearchResult search = ola_search(lattice, [&](const GeneralisationNode& node) {
        Histogram merged = merge_to(root, node, eff);
        return is_k_anonymous(merged, config.k, config.suppression_limit).pass;
    });
    if (search.minimal_passing.empty())
        throw NoFeasibleNode("chunk " + std::to_string(chunk.index) + ": no node satisfies " +
                             std::to_string(config.k) + "-anonymity");

    ChunkBaselineResult result;
    result.chunk_index = chunk.index;
    result.total = root.total;
    result.node = select_best<std::uint64_t>(
        search.minimal_passing,
        [&](const GeneralisationNode& n) {
            Histogram merged = merge_to(root, n, eff);
            return dm_star(merged, config.k);
        },
        /*minimise=*/true, lattice);
    Histogram final_hist = merge_to(root, result.node, eff);
    result.loss = loss_report(final_hist, config.k, result.node, eff);
    return result;
}

BaselineReport baseline_run(ChunkSource& source, const PipelineConfig& config,
                            const EffectiveSchema& eff) {
    config.validate();
    BaselineReport report;
    source.for_each_chunk([&](const Chunk& chunk) {
        ChunkBaselineResult r = per_chunk_anonymise(chunk, config, eff);
        report.dm_star_total += r.loss.dm_star;
        report.suppressed_total += r.loss.suppressed;
        report.records_total += r.total;
        report.chunks.push_back(std::move(r));
    });
    if (report.chunks.empty()) throw EmptyDataset("input contains no records");
    return report;
}

std::string format_baseline_report(const BaselineReport& report) {
    std::ostringstream os;
    os << "per-chunk optimal baseline\n"
       << "dm_star_total=" << report.dm_star_total << '\n'
       << "suppressed_total=" << report.suppressed_total << '\n'
       << "records_total=" << report.records_total << '\n'
       << "chunk,node,dm_star,suppressed,records\n";
    for (const auto& c : report.chunks)
        os << c.chunk_index << ',' << c.node.to_string() << ',' << c.loss.dm_star << ','
           << c.loss.suppressed << ',' << c.total << '\n';
    return os.str();
}

} // namespace skald
