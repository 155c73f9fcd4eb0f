#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "skald/effective_schema.hpp"
#include "skald/histogram.hpp"

namespace skald {

/// Exact fraction for scores where rounding could flip a tie.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational of(std::int64_t n, std::int64_t d);
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    bool operator<(const Rational& o) const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct LossReport {
    std::uint64_t dm_star = 0;
    std::uint64_t suppressed = 0;
    std::size_t num_classes = 0;
    std::uint64_t min_class = 0;
    std::uint64_t max_class = 0;
    Rational precision;
};

/// Monotonic Discernibility Metric: sum of squared class sizes over classes
/// of size >= k, plus the square of the suppressed-record count.
std::uint64_t dm_star(const Histogram& hist, std::uint64_t k);

LossReport loss_report(const Histogram& hist, std::uint64_t k, const GeneralisationNode& node,
                       const EffectiveSchema& eff);

/// 1 - mean normalised generalisation depth across QIDs; 1 at the root,
/// 0 when everything is at its top level. Single-level QIDs contribute 0.
Rational precision(const GeneralisationNode& node, const EffectiveSchema& eff);

/// Baseline-to-engine loss ratio; > 1 means the engine lost less information.
double dm_ratio(std::uint64_t dm_baseline, std::uint64_t dm_engine);

} // namespace skald
