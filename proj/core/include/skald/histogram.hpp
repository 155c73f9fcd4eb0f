#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "skald/chunk_source.hpp"
#include "skald/effective_schema.hpp"
#include "skald/schema.hpp"

namespace skald {

/// Equivalence-class key at some node: a categorical label id or numerical
/// bin index per QID, in QID order.
struct EcKey {
    std::vector<std::uint32_t> parts;

    bool operator==(const EcKey& o) const { return parts == o.parts; }
};

struct EcKeyHash {
    std::size_t operator()(const EcKey& k) const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (std::uint32_t p : k.parts) h = (h ^ p) * 0x100000001b3ULL;
        return h;
    }
};

/// Counters for the memory-contract instrumentation: how many histograms are
/// alive right now, the high-water mark since the last reset, and the largest
/// entry table seen.
namespace histogram_stats {
std::uint64_t live();
std::uint64_t peak_live();
std::uint64_t peak_entries();
void reset_peaks();
void note_entries(std::uint64_t entries);
} // namespace histogram_stats

/// Sparse equivalence-class counts at one node, plus a suppressed-records bin.
/// The sufficient statistic for Phase 2.
class Histogram {
public:
    Histogram();
    explicit Histogram(GeneralisationNode node);
    Histogram(const Histogram&);
    Histogram(Histogram&&) noexcept;
    Histogram& operator=(const Histogram&);
    Histogram& operator=(Histogram&&) noexcept;
    ~Histogram();

    GeneralisationNode node;
    std::unordered_map<EcKey, std::uint64_t, EcKeyHash> counts;
    std::uint64_t suppressed = 0;
    std::uint64_t total = 0;

private:
    bool alive_ = true;
};

/// Eq.-style bin count implied by a node: product of categorical label counts
/// and numerical bin counts, plus one for the suppressed bin. Saturates at
/// uint64 max.
std::uint64_t n_data(const GeneralisationNode& node, const EffectiveSchema& eff);

/// RAM bin budget from chunk rows and record bytes: floor(n*d/16).
std::uint64_t n_ram(std::uint64_t chunk_rows, std::uint64_t record_bytes);

/// EcKey of one record at `node`; false when any QID cell is missing,
/// unparseable, or out of domain (the record belongs in the suppressed bin).
/// Values absent from a codebook throw CodebookMiss.
bool record_key(const std::vector<std::string>& row, const GeneralisationNode& node,
                const EffectiveSchema& eff, EcKey& out);

/// Exact equivalence-class counts of the whole source at `node`.
/// `max_entries` is the stored-entry budget; exceeding it throws BudgetExceeded.
Histogram build_histogram(ChunkSource& source, const GeneralisationNode& node,
                          const EffectiveSchema& eff, std::uint64_t max_entries);

/// Same, over a single in-memory chunk (the per-chunk baseline path).
Histogram build_histogram(const Chunk& chunk, const GeneralisationNode& node,
                          const EffectiveSchema& eff, std::uint64_t max_entries);

/// Re-bins `source` histogram counts to the coarser `target` node. The input
/// is left untouched; the result equals what build_histogram would produce.
Histogram merge_to(const Histogram& source, const GeneralisationNode& target,
                   const EffectiveSchema& eff);

struct KCheck {
    bool pass = false;
    std::uint64_t suppressed_records = 0; // suppressed bin + all classes below k
};

KCheck is_k_anonymous(const Histogram& hist, std::uint64_t k, double suppression_limit);

/// Snapshot format: a header line with node/totals, then one
/// "part,part,...,count" line per entry.
void save_histogram(const Histogram& hist, const std::filesystem::path& path);
Histogram load_histogram(const std::filesystem::path& path);

} // namespace skald
