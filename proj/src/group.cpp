#include "meandim/group.hpp"

#include <algorithm>
#include <stdexcept>

namespace meandim {

std::int64_t GroupContext::length(Element a) const {
    std::int64_t ax = a.x < 0 ? -a.x : a.x;
    if (family_ == GroupFamily::IntegerLine) return ax;
    std::int64_t ay = a.y < 0 ? -a.y : a.y;
    return std::max(ax, ay);
}

std::vector<Element> GroupContext::generators() const {
    if (family_ == GroupFamily::IntegerLine) return {{1, 0}};
    return {{1, 0}, {0, 1}};
}

std::string GroupContext::family_name() const {
    return family_ == GroupFamily::IntegerLine ? "integer_line" : "integer_grid2d";
}

GroupFamily GroupContext::family_from_name(const std::string& name) {
    if (name == "integer_line") return GroupFamily::IntegerLine;
    if (name == "integer_grid2d") return GroupFamily::IntegerGrid2D;
    throw std::invalid_argument("unknown group family '" + name + "'");
}

FiniteSubset::FiniteSubset(std::vector<Element> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

FiniteSubset FiniteSubset::interval(std::int64_t lo, std::int64_t hi) {
    std::vector<Element> e;
    for (std::int64_t x = lo; x <= hi; ++x) e.push_back({x, 0});
    return FiniteSubset(std::move(e));
}

FiniteSubset FiniteSubset::box(std::int64_t lo_x, std::int64_t hi_x, std::int64_t lo_y, std::int64_t hi_y) {
    std::vector<Element> e;
    for (std::int64_t x = lo_x; x <= hi_x; ++x)
        for (std::int64_t y = lo_y; y <= hi_y; ++y) e.push_back({x, y});
    return FiniteSubset(std::move(e));
}

bool FiniteSubset::contains(Element e) const {
    return std::binary_search(elements_.begin(), elements_.end(), e);
}

FiniteSubset FiniteSubset::set_union(const FiniteSubset& o) const {
    std::vector<Element> r;
    std::set_union(elements_.begin(), elements_.end(), o.elements_.begin(), o.elements_.end(),
                   std::back_inserter(r));
    FiniteSubset s;
    s.elements_ = std::move(r);
    return s;
}

FiniteSubset FiniteSubset::set_intersection(const FiniteSubset& o) const {
    std::vector<Element> r;
    std::set_intersection(elements_.begin(), elements_.end(), o.elements_.begin(), o.elements_.end(),
                          std::back_inserter(r));
    FiniteSubset s;
    s.elements_ = std::move(r);
    return s;
}

FiniteSubset FiniteSubset::set_difference(const FiniteSubset& o) const {
    std::vector<Element> r;
    std::set_difference(elements_.begin(), elements_.end(), o.elements_.begin(), o.elements_.end(),
                        std::back_inserter(r));
    FiniteSubset s;
    s.elements_ = std::move(r);
    return s;
}

FiniteSubset FiniteSubset::symmetric_difference(const FiniteSubset& o) const {
    std::vector<Element> r;
    std::set_symmetric_difference(elements_.begin(), elements_.end(), o.elements_.begin(),
                                  o.elements_.end(), std::back_inserter(r));
    FiniteSubset s;
    s.elements_ = std::move(r);
    return s;
}

FiniteSubset FiniteSubset::inverse_product(const FiniteSubset& o, const GroupContext& ctx) const {
    std::vector<Element> r;
    r.reserve(size() * o.size());
    for (const Element& a : elements_)
        for (const Element& b : o.elements_) r.push_back(ctx.compose(ctx.invert(a), b));
    return FiniteSubset(std::move(r));
}

FiniteSubset translate(const FiniteSubset& f, Element g, TranslationSide side, const GroupContext& ctx) {
    std::vector<Element> r;
    r.reserve(f.size());
    for (const Element& e : f.elements())
        r.push_back(side == TranslationSide::Right ? ctx.compose(e, g) : ctx.compose(g, e));
    return FiniteSubset(std::move(r));
}

Rational folner_defect(const FiniteSubset& f, Element g, const GroupContext& ctx) {
    if (f.empty()) throw std::invalid_argument("folner_defect: empty set");
    FiniteSubset shifted = translate(f, g, TranslationSide::Left, ctx);
    return Rational(static_cast<long long>(f.symmetric_difference(shifted).size()),
                    static_cast<long long>(f.size()));
}

TemperedResult is_tempered(const std::vector<FiniteSubset>& prefix, const Rational& m,
                           const GroupContext& ctx) {
    if (prefix.size() < 2) throw std::invalid_argument("is_tempered: prefix length must be >= 2");
    TemperedResult res;
    res.worst_ratio = Rational(0);
    for (std::size_t n = 0; n + 1 < prefix.size(); ++n) {
        FiniteSubset u;
        for (std::size_t k = 0; k <= n; ++k)
            u = u.set_union(prefix[k].inverse_product(prefix[n + 1], ctx));
        Rational ratio(static_cast<long long>(u.size()), static_cast<long long>(prefix[n + 1].size()));
        res.worst_ratio = max(res.worst_ratio, ratio);
    }
    res.tempered = res.worst_ratio <= m;
    return res;
}

std::vector<Rational> ow_limit(const std::function<Rational(const FiniteSubset&)>& f,
                               const std::vector<FiniteSubset>& folner) {
    std::vector<Rational> out;
    out.reserve(folner.size());
    for (const FiniteSubset& fn : folner) {
        Rational v = f(fn);
        if (v.sign() < 0) throw std::invalid_argument("ow_limit: set function must be nonnegative");
        out.push_back(v / Rational(static_cast<long long>(fn.size())));
    }
    return out;
}

}  // namespace meandim
