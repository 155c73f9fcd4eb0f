#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "skald/encoding.hpp"
#include "skald/schema.hpp"

namespace skald {

/// A QID as the histogram and output passes see it: the column it reads,
/// the ladder with encoded domains substituted, and the codebook if any.
struct EffectiveQid {
    const QidSpec* spec = nullptr;
    std::size_t column = 0;
    std::optional<NumericalLadder> ladder; // effective; nullopt for categorical
    const Codebook* codebook = nullptr;    // non-null when the QID is encoded
};

struct EffectiveSchema {
    const DatasetSchema* schema = nullptr;
    std::vector<EffectiveQid> qids;
    std::vector<std::size_t> importance_order;

    std::size_t num_qids() const { return qids.size(); }
    GeneralisationNode root_node() const;
    GeneralisationNode top_node() const;
};

/// Binds codebooks (one optional per QID, in QID order) to a schema.
/// Encoded QIDs get their ladder domain replaced by [0, codebook size - 1].
/// The result points into `schema` and `codebooks`; both must outlive it.
EffectiveSchema make_effective_schema(const DatasetSchema& schema,
                                      const std::vector<std::optional<Codebook>>& codebooks);

} // namespace skald
