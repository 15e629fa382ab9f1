#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "meandim/group.hpp"

namespace meandim {

using Symbol = std::uint8_t;

/// A subshift: SFTs over the line (forbidden-word list), full shifts over the grid.
struct SubshiftSpec {
    GroupFamily family = GroupFamily::IntegerLine;
    int alphabet_size = 2;
    std::vector<std::vector<Symbol>> forbidden;  // line only; each word non-empty
    Symbol safe_symbol = 0;  // used for periodic completions

    void validate() const;
    std::size_t max_forbidden_length() const;
    bool is_full_shift() const { return forbidden.empty(); }

    static SubshiftSpec full_shift(GroupFamily family, int alphabet = 2);
    /// Binary line shift forbidding "11".
    static SubshiftSpec golden_mean();
};

/// Does the word contain a forbidden factor (as a plain, non-cyclic string)?
bool word_admissible(const SubshiftSpec& spec, const std::vector<Symbol>& word);

/// A point of the subshift: a finite window completed periodically.
/// The completion is checked against the forbidden words at construction,
/// so a Configuration is always a bona fide point.
class Configuration {
public:
    /// Line: pattern on {lo, lo+window-1}, then `pad` safe symbols, repeated with
    /// period window+pad. Throws if the periodic completion is inadmissible.
    static Configuration periodic_line(const SubshiftSpec& spec, std::int64_t lo,
                                       std::vector<Symbol> window, std::size_t pad);
    /// Grid (full shift): pattern on a box anchored at (lo_x, lo_y), safe-padded.
    static Configuration periodic_grid(const SubshiftSpec& spec, std::int64_t lo_x, std::int64_t lo_y,
                                       std::size_t width, std::size_t height,
                                       std::vector<Symbol> box, std::size_t pad);

    GroupFamily family() const { return family_; }
    Symbol at(Element g) const;
    /// The shifted point g.x with (g.x)(h) = x(h+g).
    Configuration shifted(Element g) const;
    std::int64_t period_x() const { return period_x_; }
    std::int64_t period_y() const { return period_y_; }

    bool same_point(const Configuration& o) const;

private:
    GroupFamily family_ = GroupFamily::IntegerLine;
    std::int64_t lo_x_ = 0, lo_y_ = 0;
    std::int64_t period_x_ = 1, period_y_ = 1;
    std::vector<Symbol> cells_;  // row-major over the fundamental domain
};

/// Number of locally admissible patterns on F (no forbidden word inside F).
/// Transfer-matrix DP per contiguous run; closed form for full shifts.
BigInt count_patterns(const SubshiftSpec& spec, const FiniteSubset& f);

/// log2 of the same count, by normalized DP; usable far beyond BigInt sizes.
double log2_pattern_count(const SubshiftSpec& spec, const FiniteSubset& f);

struct MetricValue {
    Rational value;
    bool exact = true;  // false: only the upper bound 2^-radius is known
};

/// d(x,y) = 2^{-min length(g) with x_g != y_g}. Exact whenever the first
/// difference lies within the radius (periodicity makes equality decidable).
MetricValue shift_metric(const Configuration& x, const Configuration& y, std::int64_t radius,
                         const GroupContext& ctx);

/// Exact distance; never truncated (uses the periods to decide equality).
Rational shift_distance_exact(const Configuration& x, const Configuration& y, const GroupContext& ctx);

/// Cylinder fixing a symbol at the identity coordinate.
struct Cylinder {
    Symbol symbol = 0;
};

/// d(U0, U1) for identity-coordinate cylinders: 1 when the symbols differ.
Rational cylinder_distance(const Cylinder& u0, const Cylinder& u1);

}  // namespace meandim
