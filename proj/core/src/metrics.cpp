#include "skald/metrics.hpp"

#include "skald/errors.hpp"

namespace skald {

Rational Rational::of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error("Rational: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return Rational{n, d};
}

Rational Rational::operator+(const Rational& o) const {
    return Rational::of(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational::of(num * o.den - o.num * den, den * o.den);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

std::uint64_t dm_star(const Histogram& hist, std::uint64_t k) {
    std::uint64_t result = 0;
    std::uint64_t suppressed = hist.suppressed;
    for (const auto& [key, count] : hist.counts) {
        if (count >= k)
            result += count * count;
        else
            suppressed += count;
    }
    return result + suppressed * suppressed;
}

LossReport loss_report(const Histogram& hist, std::uint64_t k, const GeneralisationNode& node,
                       const EffectiveSchema& eff) {
    LossReport loss;
    loss.dm_star = dm_star(hist, k);
    loss.suppressed = hist.suppressed;
    for (const auto& [key, count] : hist.counts) {
        if (count < k) {
            loss.suppressed += count;
            continue;
        }
        ++loss.num_classes;
        if (loss.min_class == 0 || count < loss.min_class) loss.min_class = count;
        if (count > loss.max_class) loss.max_class = count;
    }
    loss.precision = precision(node, eff);
    return loss;
}

Rational precision(const GeneralisationNode& node, const EffectiveSchema& eff) {
    if (node.levels.size() != eff.num_qids()) throw Error("precision: node arity mismatch");
    Rational depth{0, 1};
    for (std::size_t i = 0; i < eff.num_qids(); ++i) {
        int num_levels = eff.qids[i].ladder ? eff.qids[i].ladder->num_levels()
                                            : eff.qids[i].spec->num_levels();
        if (num_levels <= 1) continue;
        depth = depth + Rational::of(node.levels[i] - 1, num_levels - 1);
    }
    Rational avg = Rational::of(depth.num, depth.den * static_cast<std::int64_t>(eff.num_qids()));
    return Rational{1, 1} - avg;
}

double dm_ratio(std::uint64_t dm_baseline, std::uint64_t dm_engine) {
    if (dm_engine == 0) throw Error("dm_ratio: zero denominator");
    return static_cast<double>(dm_baseline) / static_cast<double>(dm_engine);
}

} // namespace skald
