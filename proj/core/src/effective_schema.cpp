#include "skald/effective_schema.hpp"

#include "skald/errors.hpp"

namespace skald {

GeneralisationNode EffectiveSchema::root_node() const {
    GeneralisationNode n;
    n.levels.assign(qids.size(), 1);
    return n;
}

GeneralisationNode EffectiveSchema::top_node() const {
    GeneralisationNode n;
    n.levels.reserve(qids.size());
    for (const auto& q : qids) {
        n.levels.push_back(q.ladder ? q.ladder->num_levels() : q.spec->num_levels());
    }
    return n;
}

EffectiveSchema make_effective_schema(const DatasetSchema& schema,
                                      const std::vector<std::optional<Codebook>>& codebooks) {
    if (!codebooks.empty() && codebooks.size() != schema.qids.size())
        throw ConfigError("codebook vector arity does not match QID count");

    EffectiveSchema eff;
    eff.schema = &schema;
    eff.importance_order = schema.importance_order();
    auto columns = schema.qid_columns();

    for (std::size_t i = 0; i < schema.qids.size(); ++i) {
        const QidSpec& q = schema.qids[i];
        EffectiveQid e;
        e.spec = &q;
        e.column = columns[i];
        if (q.kind == AttributeKind::NumericalQid) {
            e.ladder = *q.ladder;
            if (!codebooks.empty() && codebooks[i]) {
                e.codebook = &*codebooks[i];
                e.ladder->domain_min = 0;
                e.ladder->domain_max = static_cast<std::int64_t>(codebooks[i]->size()) - 1;
            }
        }
        eff.qids.push_back(std::move(e));
    }
    return eff;
}

} // namespace skald
