#include "skald/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "skald/csv.hpp"
#include "skald/errors.hpp"
#include "skald/hierarchy.hpp"

namespace skald {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

void PipelineConfig::validate() const {
    if (k < 2) throw ConfigError("k must be >= 2");
    if (suppression_limit < 0.0 || suppression_limit > 1.0)
        throw ConfigError("suppression_limit must be in [0, 1]");
    if (sparsity_threshold <= 0.0) throw ConfigError("sparsity_threshold must be positive");
    auto violations = validate_schema(schema);
    if (!violations.empty()) {
        std::string msg = "invalid schema:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw ConfigError(msg);
    }
}

std::uint64_t PipelineConfig::bin_budget() const {
    if (n_ram_override) return *n_ram_override;
    if (schema.record_bytes <= 0)
        throw ConfigError("record_bytes unresolved; run phase 1 or set it explicitly");
    return n_ram(static_cast<std::uint64_t>(schema.chunk_rows),
                 static_cast<std::uint64_t>(schema.record_bytes));
}

CsvDirSink::CsvDirSink(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

void CsvDirSink::write_chunk(const Chunk& original, const std::vector<std::string>& header,
                             const std::vector<std::vector<std::string>>& rows) {
    write_csv(dir_ / (original.name + ".anon.csv"), header, rows);
}

Phase1Result phase1(const PipelineConfig& config, ChunkSource& source) {
    config.validate();
    const DatasetSchema& schema = config.schema;
    const auto columns = schema.qid_columns();
    const std::size_t nq = schema.num_qids();

    // single pass: unique values per numerical QID, record count, and the
    // mean row width of the first chunk when record_bytes is "auto"
    std::vector<std::set<std::int64_t>> uniques(nq);
    std::uint64_t records = 0;
    std::uint64_t first_chunk_bytes = 0, first_chunk_rows = 0;
    const std::size_t unique_cap = 10'000'000;

    source.for_each_chunk([&](const Chunk& chunk) {
        records += chunk.rows.size();
        if (chunk.index == 0 && schema.record_bytes <= 0 && !config.n_ram_override) {
            for (const auto& row : chunk.rows)
                first_chunk_bytes += csv_format_row(row).size() + 1;
            first_chunk_rows = chunk.rows.size();
        }
        for (std::size_t qi = 0; qi < nq; ++qi) {
            const QidSpec& q = schema.qids[qi];
            if (q.kind != AttributeKind::NumericalQid) continue;
            std::size_t col = columns[qi];
            for (std::size_t r = 0; r < chunk.rows.size(); ++r) {
                const auto& row = chunk.rows[r];
                if (col >= row.size()) continue;
                const std::string& cell = row[col];
                if (cell.empty()) continue;
                auto units = parse_units(cell, q.ladder->unit_scale);
                if (!units)
                    throw IngestError("unparseable cell '" + cell + "' at chunk " +
                                      std::to_string(chunk.index) + " row " + std::to_string(r) +
                                      " column '" + q.name + "'");
                uniques[qi].insert(*units);
                if (uniques[qi].size() > unique_cap)
                    throw Error("unique-value cap exceeded for '" + q.name + "'");
            }
        }
    });
    if (records == 0) throw EmptyDataset("input contains no records");

    Phase1Result result;
    result.records_total = records;
    result.codebooks.resize(nq);
    for (std::size_t qi = 0; qi < nq; ++qi) {
        const QidSpec& q = schema.qids[qi];
        if (q.kind != AttributeKind::NumericalQid) continue;
        if (should_encode(*q.ladder, uniques[qi].size(), config.sparsity_threshold, q.encode)) {
            std::vector<std::int64_t> sorted(uniques[qi].begin(), uniques[qi].end());
            result.codebooks[qi] = build_codebook(q.name, sorted);
        }
    }

    // resolve the bin budget
    if (config.n_ram_override) {
        result.bin_budget = *config.n_ram_override;
    } else {
        std::uint64_t d = static_cast<std::uint64_t>(schema.record_bytes);
        if (schema.record_bytes <= 0) {
            if (first_chunk_rows == 0) throw EmptyDataset("first chunk is empty");
            d = (first_chunk_bytes + first_chunk_rows - 1) / first_chunk_rows;
        }
        result.bin_budget = n_ram(static_cast<std::uint64_t>(schema.chunk_rows), d);
    }

    EffectiveSchema eff = make_effective_schema(schema, result.codebooks);
    Lattice lattice(eff.root_node(), eff.top_node(), eff.importance_order);
    const std::uint64_t budget = result.bin_budget;
    SearchResult search = ola_search(lattice, [&](const GeneralisationNode& node) {
        return n_data(node, eff) <= budget;
    });
    result.nodes_evaluated = search.tags.evaluated_count;
    if (search.minimal_passing.empty())
        throw NoFeasibleNode("no node fits the bin budget of " + std::to_string(budget) +
                             " (top node needs " + std::to_string(n_data(lattice.top, eff)) + ")");
    result.ram_node = select_best<Rational>(
        search.minimal_passing,
        [&](const GeneralisationNode& n) { return precision(n, eff); },
        /*minimise=*/false, lattice);
    result.tags = std::move(search.tags);
    return result;
}

Phase2Result phase2(const PipelineConfig& config, ChunkSource& source, const EffectiveSchema& eff,
                    const GeneralisationNode& ram_node, std::uint64_t bin_budget) {
    histogram_stats::reset_peaks();
    Phase2Result result;
    result.root_histogram = build_histogram(source, ram_node, eff, bin_budget);

    Lattice lattice(ram_node, eff.top_node(), eff.importance_order);
    const Histogram& root = result.root_histogram;
    SearchResult search = ola_search(lattice, [&](const GeneralisationNode& node) {
        Histogram merged = merge_to(root, node, eff);
        return is_k_anonymous(merged, config.k, config.suppression_limit).pass;
    });
    result.nodes_evaluated = search.tags.evaluated_count;
    if (search.minimal_passing.empty())
        throw NoFeasibleNode("no node satisfies " + std::to_string(config.k) +
                             "-anonymity within the suppression limit");

    result.final_node = select_best<std::uint64_t>(
        search.minimal_passing,
        [&](const GeneralisationNode& n) {
            Histogram merged = merge_to(root, n, eff);
            return dm_star(merged, config.k);
        },
        /*minimise=*/true, lattice);

    Histogram final_hist = merge_to(root, result.final_node, eff);
    result.loss = loss_report(final_hist, config.k, result.final_node, eff);
    result.tags = std::move(search.tags);
    return result;
}

namespace {

/// Rendered label of one QID cell at the final node's level.
std::string render_qid(const std::string& cell, const EffectiveQid& q, int level) {
    if (!q.ladder) return generalise_categorical(cell, *q.spec->hierarchy, level);
    std::int64_t units = *parse_units(cell, q.spec->ladder->unit_scale);
    if (!q.codebook) return generalise_numerical(units, *q.ladder, level).display;
    // decoded output: bin over codes, rendered as the raw-value range
    Bin bin = generalise_numerical(q.codebook->encode(units), *q.ladder, level);
    std::int64_t raw_lo = q.codebook->decode(bin.lo);
    std::int64_t raw_hi = q.codebook->decode(bin.hi);
    std::int64_t scale = q.spec->ladder->unit_scale;
    return "[" + render_units(raw_lo, scale) + " - " + render_units(raw_hi, scale) + "]";
}

} // namespace

std::vector<std::string> output_header(const DatasetSchema& schema) {
    std::vector<std::string> header;
    for (const auto& [name, kind] : schema.columns)
        if (kind != AttributeKind::DirectIdentifier) header.push_back(name);
    return header;
}

Phase3Result phase3(const PipelineConfig& config, ChunkSource& source, const EffectiveSchema& eff,
                    const Histogram& final_histogram, OutputSink& sink) {
    const DatasetSchema& schema = config.schema;
    const GeneralisationNode& node = final_histogram.node;

    // column index -> QID index, for columns that are QIDs
    std::vector<std::optional<std::size_t>> col_qid(schema.columns.size());
    for (std::size_t qi = 0; qi < eff.num_qids(); ++qi) col_qid[eff.qids[qi].column] = qi;

    std::vector<std::string> header = output_header(schema);
    Phase3Result result;

    source.for_each_chunk([&](const Chunk& chunk) {
        std::vector<std::vector<std::string>> out_rows;
        out_rows.reserve(chunk.rows.size());
        EcKey key;
        for (const auto& row : chunk.rows) {
            if (!record_key(row, node, eff, key)) {
                ++result.suppressed;
                continue;
            }
            auto it = final_histogram.counts.find(key);
            if (it == final_histogram.counts.end() || it->second < config.k) {
                ++result.suppressed;
                continue;
            }
            std::vector<std::string> out;
            out.reserve(header.size());
            for (std::size_t c = 0; c < schema.columns.size(); ++c) {
                if (schema.columns[c].second == AttributeKind::DirectIdentifier) continue;
                const std::string& cell = c < row.size() ? row[c] : std::string();
                if (col_qid[c]) {
                    std::size_t qi = *col_qid[c];
                    out.push_back(render_qid(cell, eff.qids[qi], node.levels[qi]));
                } else {
                    out.push_back(cell);
                }
            }
            out_rows.push_back(std::move(out));
            ++result.written;
        }
        sink.write_chunk(chunk, header, out_rows);
    });
    return result;
}

AnonymisationReport run(const PipelineConfig& config, ChunkSource& source, OutputSink& sink) {
    AnonymisationReport report;
    auto t0 = std::chrono::steady_clock::now();

    Phase1Result p1 = phase1(config, source);
    report.wall_phase1 = seconds_since(t0);
    report.ram_node = p1.ram_node;
    report.nodes_evaluated_phase1 = p1.nodes_evaluated;
    report.records_total = p1.records_total;
    report.chunks_processed = source.chunk_count();

    EffectiveSchema eff = make_effective_schema(config.schema, p1.codebooks);

    auto t1 = std::chrono::steady_clock::now();
    Phase2Result p2 = phase2(config, source, eff, p1.ram_node, p1.bin_budget);
    report.wall_phase2 = seconds_since(t1);
    report.final_node = p2.final_node;
    report.nodes_evaluated_phase2 = p2.nodes_evaluated;
    report.loss = p2.loss;

    if (!config.output_dir.empty()) {
        std::filesystem::create_directories(config.output_dir);
        for (const auto& cb : p1.codebooks)
            if (cb) cb->save(config.output_dir / (cb->qid_name + ".codebook.csv"));
        save_histogram(p2.root_histogram, config.output_dir / "root_histogram.snapshot");
    }

    auto t2 = std::chrono::steady_clock::now();
    Histogram final_hist = merge_to(p2.root_histogram, p2.final_node, eff);
    Phase3Result p3 = phase3(config, source, eff, final_hist, sink);
    report.wall_phase3 = seconds_since(t2);
    report.records_written = p3.written;
    report.records_suppressed = p3.suppressed;
    return report;
}

std::string format_report_text(const AnonymisationReport& r) {
    std::ostringstream os;
    os << "ram_node:        " << r.ram_node.to_string() << '\n'
       << "final_node:      " << r.final_node.to_string() << '\n'
       << "dm_star:         " << r.loss.dm_star << '\n'
       << "precision:       " << r.loss.precision.to_double() << '\n'
       << "classes:         " << r.loss.num_classes << " (min " << r.loss.min_class << ", max "
       << r.loss.max_class << ")\n"
       << "records_total:   " << r.records_total << '\n'
       << "records_written: " << r.records_written << '\n'
       << "suppressed:      " << r.records_suppressed << '\n'
       << "chunks:          " << r.chunks_processed << '\n'
       << "nodes_evaluated: phase1=" << r.nodes_evaluated_phase1 << " phase2="
       << r.nodes_evaluated_phase2 << '\n'
       << "wall_seconds:    phase1=" << r.wall_phase1 << " phase2=" << r.wall_phase2
       << " phase3=" << r.wall_phase3 << '\n';
    return os.str();
}

std::string format_report_kv(const AnonymisationReport& r) {
    std::ostringstream os;
    os << "ram_node=" << r.ram_node.to_string() << '\n'
       << "final_node=" << r.final_node.to_string() << '\n'
       << "dm_star=" << r.loss.dm_star << '\n'
       << "precision=" << r.loss.precision.num << '/' << r.loss.precision.den << '\n'
       << "num_classes=" << r.loss.num_classes << '\n'
       << "min_class=" << r.loss.min_class << '\n'
       << "max_class=" << r.loss.max_class << '\n'
       << "records_total=" << r.records_total << '\n'
       << "records_written=" << r.records_written << '\n'
       << "records_suppressed=" << r.records_suppressed << '\n'
       << "chunks_processed=" << r.chunks_processed << '\n'
       << "nodes_evaluated_phase1=" << r.nodes_evaluated_phase1 << '\n'
       << "nodes_evaluated_phase2=" << r.nodes_evaluated_phase2 << '\n'
       << "wall_phase1=" << r.wall_phase1 << '\n'
       << "wall_phase2=" << r.wall_phase2 << '\n'
       << "wall_phase3=" << r.wall_phase3 << '\n';
    return os.str();
}

} // namespace skald
