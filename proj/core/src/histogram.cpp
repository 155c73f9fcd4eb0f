#include "skald/histogram.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>

#include "skald/errors.hpp"
#include "skald/hierarchy.hpp"

namespace skald {

namespace histogram_stats {

namespace {
std::atomic<std::uint64_t> g_live{0};
std::atomic<std::uint64_t> g_peak_live{0};
std::atomic<std::uint64_t> g_peak_entries{0};

void bump_live() {
    std::uint64_t now = ++g_live;
    std::uint64_t peak = g_peak_live.load();
    while (now > peak && !g_peak_live.compare_exchange_weak(peak, now)) {}
}
} // namespace

std::uint64_t live() { return g_live.load(); }
std::uint64_t peak_live() { return g_peak_live.load(); }
std::uint64_t peak_entries() { return g_peak_entries.load(); }

void reset_peaks() {
    g_peak_live.store(g_live.load());
    g_peak_entries.store(0);
}

void note_entries(std::uint64_t entries) {
    std::uint64_t peak = g_peak_entries.load();
    while (entries > peak && !g_peak_entries.compare_exchange_weak(peak, entries)) {}
}

} // namespace histogram_stats

Histogram::Histogram() { histogram_stats::bump_live(); }

Histogram::Histogram(GeneralisationNode node_) : node(std::move(node_)) {
    histogram_stats::bump_live();
}

Histogram::Histogram(const Histogram& o)
    : node(o.node), counts(o.counts), suppressed(o.suppressed), total(o.total) {
    histogram_stats::bump_live();
}

Histogram::Histogram(Histogram&& o) noexcept
    : node(std::move(o.node)), counts(std::move(o.counts)), suppressed(o.suppressed),
      total(o.total) {
    alive_ = o.alive_;
    o.alive_ = false;
}

Histogram& Histogram::operator=(const Histogram& o) {
    if (this != &o) {
        node = o.node;
        counts = o.counts;
        suppressed = o.suppressed;
        total = o.total;
        if (!alive_) {
            histogram_stats::bump_live();
            alive_ = true;
        }
    }
    return *this;
}

Histogram& Histogram::operator=(Histogram&& o) noexcept {
    if (this != &o) {
        node = std::move(o.node);
        counts = std::move(o.counts);
        suppressed = o.suppressed;
        total = o.total;
        if (alive_) --histogram_stats::g_live;
        alive_ = o.alive_;
        o.alive_ = false;
    }
    return *this;
}

Histogram::~Histogram() {
    if (alive_) --histogram_stats::g_live;
}

std::uint64_t n_data(const GeneralisationNode& node, const EffectiveSchema& eff) {
    if (node.levels.size() != eff.num_qids()) throw Error("n_data: node arity mismatch");
    unsigned __int128 product = 1;
    const unsigned __int128 cap = ~static_cast<std::uint64_t>(0);
    for (std::size_t i = 0; i < eff.num_qids(); ++i) {
        const EffectiveQid& q = eff.qids[i];
        std::uint64_t factor;
        if (q.ladder) {
            factor = static_cast<std::uint64_t>(bins_at_level(*q.ladder, node.levels[i]));
        } else {
            factor = q.spec->hierarchy->label_count(node.levels[i]);
        }
        product *= factor;
        if (product > cap) return static_cast<std::uint64_t>(cap);
    }
    product += 1;
    if (product > cap) return static_cast<std::uint64_t>(cap);
    return static_cast<std::uint64_t>(product);
}

std::uint64_t n_ram(std::uint64_t chunk_rows, std::uint64_t record_bytes) {
    return chunk_rows * record_bytes / 16;
}

bool record_key(const std::vector<std::string>& row, const GeneralisationNode& node,
                const EffectiveSchema& eff, EcKey& out) {
    out.parts.clear();
    out.parts.reserve(eff.num_qids());
    for (std::size_t i = 0; i < eff.num_qids(); ++i) {
        const EffectiveQid& q = eff.qids[i];
        if (q.column >= row.size()) return false;
        const std::string& cell = row[q.column];
        if (cell.empty()) return false;
        if (q.ladder) {
            auto units = parse_units(cell, q.spec->ladder->unit_scale);
            if (!units) return false;
            std::int64_t v = *units;
            if (q.codebook) v = q.codebook->encode(v);
            if (v < q.ladder->domain_min || v > q.ladder->domain_max) return false;
            out.parts.push_back(static_cast<std::uint32_t>(bin_index(v, *q.ladder, node.levels[i])));
        } else {
            const auto& table = q.spec->hierarchy->level_table(node.levels[i]);
            auto it = table.value_to_label_id.find(cell);
            if (it == table.value_to_label_id.end()) return false;
            out.parts.push_back(it->second);
        }
    }
    return true;
}

namespace {

void ingest_chunk(const Chunk& chunk, const GeneralisationNode& node, const EffectiveSchema& eff,
                  std::uint64_t max_entries, Histogram& hist) {
    EcKey key;
    for (const auto& row : chunk.rows) {
        ++hist.total;
        if (record_key(row, node, eff, key)) {
            auto [it, inserted] = hist.counts.emplace(key, 0);
            if (inserted && hist.counts.size() > max_entries) {
                throw BudgetExceeded("histogram at " + node.to_string() + " exceeds budget of " +
                                     std::to_string(max_entries) + " entries");
            }
            ++it->second;
        } else {
            ++hist.suppressed;
        }
    }
    histogram_stats::note_entries(hist.counts.size());
}

} // namespace

Histogram build_histogram(ChunkSource& source, const GeneralisationNode& node,
                          const EffectiveSchema& eff, std::uint64_t max_entries) {
    Histogram hist(node);
    source.for_each_chunk([&](const Chunk& chunk) {
        ingest_chunk(chunk, node, eff, max_entries, hist);
    });
    return hist;
}

Histogram build_histogram(const Chunk& chunk, const GeneralisationNode& node,
                          const EffectiveSchema& eff, std::uint64_t max_entries) {
    Histogram hist(node);
    ingest_chunk(chunk, node, eff, max_entries, hist);
    return hist;
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Per-QID translation from source-level component to target-level component.
struct ComponentMap {
    std::vector<std::uint32_t> table; // categorical: label id -> label id
    // numerical translation inputs
    bool numerical = false;
    const NumericalLadder* ladder = nullptr;
    std::int64_t src_first = 0, src_width = 0;
    bool src_final = false;
    int target_level = 0;

    std::uint32_t map(std::uint32_t part) const {
        if (!numerical) return table[part];
        std::int64_t rep;
        if (src_final) {
            rep = ladder->domain_min;
        } else {
            rep = std::clamp(src_first + static_cast<std::int64_t>(part) * src_width,
                             ladder->domain_min, ladder->domain_max);
        }
        return static_cast<std::uint32_t>(bin_index(rep, *ladder, target_level));
    }
};

} // namespace

Histogram merge_to(const Histogram& source, const GeneralisationNode& target,
                   const EffectiveSchema& eff) {
    NodeOrder ord = node_compare(source.node, target);
    if (ord != NodeOrder::Less && ord != NodeOrder::Equal)
        throw Error("merge_to: target " + target.to_string() + " is not a generalisation of " +
                    source.node.to_string());

    std::vector<ComponentMap> maps(eff.num_qids());
    for (std::size_t i = 0; i < eff.num_qids(); ++i) {
        const EffectiveQid& q = eff.qids[i];
        ComponentMap& m = maps[i];
        int src_level = source.node.levels[i];
        m.target_level = target.levels[i];
        if (q.ladder) {
            m.numerical = true;
            m.ladder = &*q.ladder;
            m.src_final = src_level == q.ladder->num_levels();
            if (!m.src_final) {
                m.src_width = q.ladder->widths[static_cast<std::size_t>(src_level - 1)];
                m.src_first = q.ladder->anchor +
                              floor_div(q.ladder->domain_min - q.ladder->anchor, m.src_width) *
                                  m.src_width;
            }
        } else {
            const auto& src_table = q.spec->hierarchy->level_table(src_level);
            const auto& dst_table = q.spec->hierarchy->level_table(m.target_level);
            m.table.assign(src_table.labels.size(), 0);
            for (const auto& [value, src_id] : src_table.value_to_label_id)
                m.table[src_id] = dst_table.value_to_label_id.at(value);
        }
    }

    Histogram out(target);
    out.suppressed = source.suppressed;
    out.total = source.total;
    EcKey key;
    for (const auto& [src_key, count] : source.counts) {
        key.parts.resize(src_key.parts.size());
        for (std::size_t i = 0; i < src_key.parts.size(); ++i)
            key.parts[i] = maps[i].map(src_key.parts[i]);
        out.counts[key] += count;
    }
    histogram_stats::note_entries(out.counts.size());
    return out;
}

KCheck is_k_anonymous(const Histogram& hist, std::uint64_t k, double suppression_limit) {
    KCheck check;
    check.suppressed_records = hist.suppressed;
    for (const auto& [key, count] : hist.counts)
        if (count < k) check.suppressed_records += count;
    check.pass = static_cast<double>(check.suppressed_records) <=
                 suppression_limit * static_cast<double>(hist.total);
    return check;
}

void save_histogram(const Histogram& hist, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "# node=" << hist.node.to_string() << " total=" << hist.total
        << " suppressed=" << hist.suppressed << '\n';
    for (const auto& [key, count] : hist.counts) {
        for (std::uint32_t p : key.parts) out << p << ',';
        out << count << '\n';
    }
}

Histogram load_histogram(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("# node=", 0) != 0)
        throw Error("malformed histogram snapshot: " + path.string());

    Histogram hist;
    std::istringstream hdr(line.substr(2));
    std::string field;
    while (hdr >> field) {
        auto eq = field.find('=');
        if (eq == std::string::npos) continue;
        std::string name = field.substr(0, eq);
        std::string value = field.substr(eq + 1);
        if (name == "node") {
            for (std::size_t i = 1; i < value.size();) {
                std::size_t end = value.find_first_of(",)", i);
                hist.node.levels.push_back(std::stoi(value.substr(i, end - i)));
                i = end + 1;
            }
        } else if (name == "total") {
            hist.total = std::stoull(value);
        } else if (name == "suppressed") {
            hist.suppressed = std::stoull(value);
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        EcKey key;
        std::size_t start = 0;
        std::vector<std::uint64_t> values;
        while (start <= line.size()) {
            std::size_t comma = line.find(',', start);
            std::string tok = line.substr(start, comma == std::string::npos ? std::string::npos
                                                                            : comma - start);
            values.push_back(std::stoull(tok));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (values.empty()) throw Error("malformed histogram entry: " + line);
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            key.parts.push_back(static_cast<std::uint32_t>(values[i]));
        hist.counts.emplace(std::move(key), values.back());
    }
    return hist;
}

} // namespace skald
