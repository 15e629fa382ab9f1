#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "meandim/rational.hpp"

namespace meandim {

enum class GroupFamily { IntegerLine, IntegerGrid2D };

/// Group element with explicit coordinates; y is always 0 on the line.
struct Element {
    std::int64_t x = 0;
    std::int64_t y = 0;

    bool operator==(const Element& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Element& o) const { return !(*this == o); }
    bool operator<(const Element& o) const { return x != o.x ? x < o.x : y < o.y; }
};

/// A concrete amenable group: the element algebra the rest of the lab builds on.
///
/// The contract (identity, compose, invert, length) is what other groups would
/// have to supply; only Z and Z^2 are instantiated here.
class GroupContext {
public:
    explicit GroupContext(GroupFamily family) : family_(family) {}

    GroupFamily family() const { return family_; }
    Element identity() const { return {}; }
    Element compose(Element a, Element b) const { return {a.x + b.x, a.y + b.y}; }
    Element invert(Element a) const { return {-a.x, -a.y}; }
    /// Word length: |x| on the line, max-norm on the grid.
    std::int64_t length(Element a) const;
    /// Standard generators: {1} resp. {(1,0),(0,1)}.
    std::vector<Element> generators() const;

    std::string family_name() const;
    static GroupFamily family_from_name(const std::string& name);

private:
    GroupFamily family_;
};

/// Sorted duplicate-free set of group elements.
class FiniteSubset {
public:
    FiniteSubset() = default;
    explicit FiniteSubset(std::vector<Element> elements);

    static FiniteSubset interval(std::int64_t lo, std::int64_t hi);  // {lo..hi} on the line
    static FiniteSubset box(std::int64_t lo_x, std::int64_t hi_x, std::int64_t lo_y, std::int64_t hi_y);

    const std::vector<Element>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    bool contains(Element e) const;

    FiniteSubset set_union(const FiniteSubset& o) const;
    FiniteSubset set_intersection(const FiniteSubset& o) const;
    FiniteSubset set_difference(const FiniteSubset& o) const;
    FiniteSubset symmetric_difference(const FiniteSubset& o) const;
    /// {a^{-1} b : a in this, b in o}.
    FiniteSubset inverse_product(const FiniteSubset& o, const GroupContext& ctx) const;

    bool operator==(const FiniteSubset& o) const { return elements_ == o.elements_; }

private:
    std::vector<Element> elements_;
};

enum class TranslationSide { Left, Right };

/// F*g (Right) or g*F (Left); same cardinality as F.
FiniteSubset translate(const FiniteSubset& f, Element g, TranslationSide side, const GroupContext& ctx);

/// |F delta gF| / |F| in [0,2]; 0 for g = identity.
Rational folner_defect(const FiniteSubset& f, Element g, const GroupContext& ctx);

struct TemperedResult {
    bool tempered = false;
    Rational worst_ratio;
};

/// Shulman condition |U_{k<=n} F_k^{-1} F_{n+1}| <= M |F_{n+1}| over the whole prefix.
TemperedResult is_tempered(const std::vector<FiniteSubset>& prefix, const Rational& m,
                           const GroupContext& ctx);

/// Quotients f(F_n)/|F_n| in input order; diagnostic for the subadditive limit.
/// Rejects negative f values.
std::vector<Rational> ow_limit(const std::function<Rational(const FiniteSubset&)>& f,
                               const std::vector<FiniteSubset>& folner);

}  // namespace meandim
