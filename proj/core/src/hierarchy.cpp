#include "skald/hierarchy.hpp"

#include <algorithm>

#include "skald/errors.hpp"

namespace skald {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

void check_level(const NumericalLadder& ladder, int level) {
    if (level < 1 || level > ladder.num_levels())
        throw LevelOutOfRange("numerical level " + std::to_string(level) + " out of range");
}

void check_domain(std::int64_t units, const NumericalLadder& ladder) {
    if (units < ladder.domain_min || units > ladder.domain_max)
        throw ValueNotInDomain("value " + std::to_string(units) + " outside domain [" +
                               std::to_string(ladder.domain_min) + ", " +
                               std::to_string(ladder.domain_max) + "]");
}

std::int64_t bin_start(std::int64_t units, std::int64_t anchor, std::int64_t width) {
    return anchor + floor_div(units - anchor, width) * width;
}

std::string render_bin(std::int64_t lo, std::int64_t hi, std::int64_t scale) {
    if (scale == 1)
        return "[" + std::to_string(lo) + " - " + std::to_string(hi) + "]";
    // fractional units render half-open on the raw scale
    return "[" + render_units(lo, scale) + " - " + render_units(hi + 1, scale) + ")";
}

} // namespace

std::string render_units(std::int64_t units, std::int64_t scale) {
    if (scale <= 1) return std::to_string(units);
    bool neg = units < 0;
    std::uint64_t u = neg ? static_cast<std::uint64_t>(-units) : static_cast<std::uint64_t>(units);
    std::uint64_t s = static_cast<std::uint64_t>(scale);
    std::string out = (neg ? "-" : "") + std::to_string(u / s);
    std::uint64_t rem = u % s;
    if (rem == 0) return out;
    std::string frac;
    for (int i = 0; i < 12 && rem != 0; ++i) {
        rem *= 10;
        frac += static_cast<char>('0' + rem / s);
        rem %= s;
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    return out + "." + frac;
}

std::optional<std::int64_t> parse_units(const std::string& cell, std::int64_t scale) {
    std::size_t i = 0;
    bool neg = false;
    if (i < cell.size() && (cell[i] == '-' || cell[i] == '+')) {
        neg = cell[i] == '-';
        ++i;
    }
    if (i >= cell.size()) return std::nullopt;
    std::int64_t whole = 0;
    bool any = false;
    for (; i < cell.size() && cell[i] >= '0' && cell[i] <= '9'; ++i) {
        whole = whole * 10 + (cell[i] - '0');
        any = true;
    }
    std::int64_t units = whole * scale;
    if (i < cell.size() && cell[i] == '.') {
        ++i;
        std::int64_t s = scale;
        for (; i < cell.size() && cell[i] >= '0' && cell[i] <= '9'; ++i) {
            any = true;
            if (s % 10 == 0) {
                s /= 10;
                units += (cell[i] - '0') * s;
            }
            // digits finer than the unit scale are truncated
        }
    }
    if (!any || i != cell.size()) return std::nullopt;
    return neg ? -units : units;
}

std::string generalise_categorical(const std::string& value, const CategoricalHierarchy& h,
                                   int level) {
    if (level < 1 || level > h.num_levels())
        throw LevelOutOfRange("categorical level " + std::to_string(level) + " out of range");
    const auto& table = h.levels[static_cast<std::size_t>(level - 1)];
    auto it = table.find(value);
    if (it == table.end())
        throw ValueNotInDomain("value '" + value + "' not in categorical domain");
    return it->second;
}

Bin generalise_numerical(std::int64_t units, const NumericalLadder& ladder, int level) {
    check_level(ladder, level);
    check_domain(units, ladder);
    Bin bin;
    if (level == ladder.num_levels()) {
        bin.lo = ladder.domain_min;
        bin.hi = ladder.domain_max;
    } else {
        std::int64_t w = ladder.widths[static_cast<std::size_t>(level - 1)];
        std::int64_t start = bin_start(units, ladder.anchor, w);
        bin.lo = std::max(start, ladder.domain_min);
        bin.hi = std::min(start + w - 1, ladder.domain_max);
    }
    bin.display = render_bin(bin.lo, bin.hi, ladder.unit_scale);
    return bin;
}

std::int64_t bin_index(std::int64_t units, const NumericalLadder& ladder, int level) {
    check_level(ladder, level);
    check_domain(units, ladder);
    if (level == ladder.num_levels()) return 0;
    std::int64_t w = ladder.widths[static_cast<std::size_t>(level - 1)];
    std::int64_t first = bin_start(ladder.domain_min, ladder.anchor, w);
    return (bin_start(units, ladder.anchor, w) - first) / w;
}

std::int64_t bins_at_level(const NumericalLadder& ladder, int level) {
    check_level(ladder, level);
    if (level == ladder.num_levels()) return 1;
    return bin_index(ladder.domain_max, ladder, level) + 1;
}

} // namespace skald
