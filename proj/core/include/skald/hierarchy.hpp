#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "skald/schema.hpp"

namespace skald {

/// Closed integer-unit range. `display` is the rendered label:
/// closed "[a - b]" for unit_scale 1, half-open "[a - b)" otherwise.
struct Bin {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::string display;

    bool operator==(const Bin& o) const { return lo == o.lo && hi == o.hi; }
};

/// Renders `units` back to the raw scale, e.g. 238 at scale 10 -> "23.8".
std::string render_units(std::int64_t units, std::int64_t scale);

/// Parses a decimal cell into integer units ("23.8" at scale 10 -> 238).
/// Extra fractional digits are truncated. Returns nullopt if unparseable.
std::optional<std::int64_t> parse_units(const std::string& cell, std::int64_t scale);

/// Label of `value` at `level`. Level 1 is the identity, the top level is "*".
std::string generalise_categorical(const std::string& value, const CategoricalHierarchy& h,
                                   int level);

Bin generalise_numerical(std::int64_t units, const NumericalLadder& ladder, int level);

/// Dense bin number: equal iff the bins are equal; the final level is always 0.
std::int64_t bin_index(std::int64_t units, const NumericalLadder& ladder, int level);

/// Count of distinct bins over the whole domain at `level` (1 for the final level).
std::int64_t bins_at_level(const NumericalLadder& ladder, int level);

} // namespace skald
