#include "meandim/cover.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

namespace meandim {

namespace {

// All integer vectors of length k with entries in [0, cap] summing as directed.
void enumerate_compositions(int k, int cap, int lo_sum, int hi_sum, std::vector<int>& cur,
                            std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        int s = 0;
        for (int v : cur) s += v;
        if (s >= lo_sum && s <= hi_sum) out.push_back(cur);
        return;
    }
    for (int v = 0; v <= cap; ++v) {
        cur.push_back(v);
        enumerate_compositions(k, cap, lo_sum, hi_sum, cur, out);
        cur.pop_back();
    }
}

}  // namespace

GridGeometry GridGeometry::make(const ProductSpec& spec, int resolution) {
    spec.validate();
    if (resolution < 1) throw std::invalid_argument("GridGeometry: resolution must be >= 1");
    GridGeometry g;
    g.spec = spec;
    g.resolution = resolution;
    for (int k : spec.k) {
        std::vector<std::vector<int>> cells, vertices;
        std::vector<int> cur;
        enumerate_compositions(k, resolution - 1, resolution - k + 1, resolution - 1, cur, cells);
        enumerate_compositions(k, resolution, resolution, resolution, cur, vertices);
        g.factor_cells.push_back(std::move(cells));
        g.factor_vertices.push_back(std::move(vertices));
    }
    return g;
}

std::size_t GridGeometry::product_cell_count() const {
    std::size_t n = 1;
    for (const auto& fc : factor_cells) n *= fc.size();
    return n;
}

std::size_t GridGeometry::encode_cell(const std::vector<std::size_t>& per_factor) const {
    std::size_t id = 0;
    for (std::size_t f = 0; f < factor_cells.size(); ++f) id = id * factor_cells[f].size() + per_factor[f];
    return id;
}

std::vector<std::size_t> GridGeometry::decode_cell(std::size_t id) const {
    std::vector<std::size_t> out(factor_cells.size());
    for (std::size_t f = factor_cells.size(); f-- > 0;) {
        out[f] = id % factor_cells[f].size();
        id /= factor_cells[f].size();
    }
    return out;
}

namespace {

GridBox cell_box(const GridGeometry& g, std::size_t cell_id) {
    GridBox b;
    auto per = g.decode_cell(cell_id);
    for (std::size_t f = 0; f < g.factor_cells.size(); ++f) {
        const auto& s = g.factor_cells[f][per[f]];
        std::vector<std::array<int, 2>> r;
        r.reserve(s.size());
        for (int sj : s) r.push_back({sj, sj + 1});
        b.range.push_back(std::move(r));
    }
    return b;
}

bool factor_box_nonempty(const std::vector<std::array<int, 2>>& range, int r) {
    int lo = 0, hi = 0;
    for (const auto& c : range) {
        if (c[0] > c[1]) return false;
        lo += c[0];
        hi += c[1];
    }
    return lo <= r && r <= hi;
}

bool box_nonempty(const GridBox& b, int r) {
    for (const auto& fr : b.range)
        if (!factor_box_nonempty(fr, r)) return false;
    return true;
}

std::optional<GridBox> box_intersect(const GridBox& a, const GridBox& b, int r) {
    GridBox out;
    out.range.resize(a.range.size());
    for (std::size_t f = 0; f < a.range.size(); ++f) {
        out.range[f].resize(a.range[f].size());
        for (std::size_t j = 0; j < a.range[f].size(); ++j) {
            out.range[f][j] = {std::max(a.range[f][j][0], b.range[f][j][0]),
                               std::min(a.range[f][j][1], b.range[f][j][1])};
        }
    }
    if (!box_nonempty(out, r)) return std::nullopt;
    return out;
}

// Does box meet the embedded face (factor, mask)? The face needs y_j = 0 for
// j outside the mask and the masked coordinates summing to r, all inside the box.
bool box_meets_embedded_face(const GridBox& b, int r, std::size_t factor, std::uint32_t mask) {
    for (std::size_t f = 0; f < b.range.size(); ++f) {
        if (!factor_box_nonempty(b.range[f], r)) return false;
        if (f != factor) continue;
        int lo = 0, hi = 0;
        for (std::size_t j = 0; j < b.range[f].size(); ++j) {
            if (mask & (1u << j)) {
                lo += b.range[f][j][0];
                hi += b.range[f][j][1];
            } else if (b.range[f][j][0] > 0) {
                return false;
            }
        }
        if (!(lo <= r && r <= hi)) return false;
    }
    return true;
}

bool element_meets_embedded_face(const CoverElement& e, int r, std::size_t factor, std::uint32_t mask) {
    for (const GridBox& b : e.boxes)
        if (box_meets_embedded_face(b, r, factor, mask)) return true;
    return false;
}

std::vector<GridBox> intersect_element_list(const std::vector<GridBox>& acc, const CoverElement& e,
                                            int r) {
    std::vector<GridBox> out;
    for (const GridBox& a : acc)
        for (const GridBox& b : e.boxes)
            if (auto x = box_intersect(a, b, r)) out.push_back(std::move(*x));
    return out;
}

bool vertex_in_box(const GridBox& b, const std::vector<std::vector<int>>& v) {
    for (std::size_t f = 0; f < b.range.size(); ++f)
        for (std::size_t j = 0; j < b.range[f].size(); ++j)
            if (v[f][j] < b.range[f][j][0] || v[f][j] > b.range[f][j][1]) return false;
    return true;
}

bool vertex_in_element(const CoverElement& e, const std::vector<std::vector<int>>& v) {
    for (const GridBox& b : e.boxes)
        if (vertex_in_box(b, v)) return true;
    return false;
}

std::vector<std::uint32_t> element_incidence(const GridGeometry& g, const CoverElement& e) {
    std::vector<std::uint32_t> inc(g.spec.factors(), 0);
    for (std::size_t f = 0; f < g.spec.factors(); ++f) {
        std::uint32_t full = (1u << g.spec.k[f]) - 1u;
        for (int j = 0; j < g.spec.k[f]; ++j) {
            std::uint32_t face = full & ~(1u << j);
            if (element_meets_embedded_face(e, g.resolution, f, face)) inc[f] |= 1u << j;
        }
    }
    return inc;
}

}  // namespace

GridCover GridCover::from_cells(const ProductSpec& spec, int resolution,
                                const std::vector<std::vector<std::size_t>>& element_cells) {
    GridCover c;
    c.geom = GridGeometry::make(spec, resolution);
    std::size_t total = c.geom.product_cell_count();
    std::vector<bool> covered(total, false);
    for (const auto& cells : element_cells) {
        if (cells.empty()) throw std::invalid_argument("GridCover: empty element");
        CoverElement e;
        e.cells = cells;
        std::sort(e.cells.begin(), e.cells.end());
        e.cells.erase(std::unique(e.cells.begin(), e.cells.end()), e.cells.end());
        for (std::size_t id : e.cells) {
            if (id >= total) throw std::out_of_range("GridCover: cell id out of range");
            covered[id] = true;
            e.boxes.push_back(cell_box(c.geom, id));
        }
        c.elements.push_back(std::move(e));
    }
    for (std::size_t id = 0; id < total; ++id)
        if (!covered[id]) throw std::invalid_argument("GridCover: cell " + std::to_string(id) + " uncovered");
    for (const auto& e : c.elements) c.incidence.push_back(element_incidence(c.geom, e));
    return c;
}

namespace {

// Advances a mixed-radix counter; false once it wraps around.
bool advance_counter(std::vector<std::size_t>& idx, const std::function<std::size_t(std::size_t)>& radix) {
    for (std::size_t f = idx.size(); f-- > 0;) {
        if (++idx[f] < radix(f)) return true;
        idx[f] = 0;
    }
    return false;
}

int order_of_elements(const GridGeometry& g, const std::vector<CoverElement>& elements) {
    // Walk all product grid vertices; order = max membership - 1.
    std::size_t nf = g.spec.factors();
    std::vector<std::size_t> idx(nf, 0);
    int best = -1;
    do {
        std::vector<std::vector<int>> v;
        v.reserve(nf);
        for (std::size_t f = 0; f < nf; ++f) v.push_back(g.factor_vertices[f][idx[f]]);
        int count = 0;
        for (const auto& e : elements)
            if (vertex_in_element(e, v)) ++count;
        best = std::max(best, count - 1);
    } while (advance_counter(idx, [&](std::size_t f) { return g.factor_vertices[f].size(); }));
    return best;
}

}  // namespace

int cover_order(const GridCover& cover) { return order_of_elements(cover.geom, cover.elements); }

namespace {

// Recursion over face assignments for a fixed subfamily.
bool find_violating_assignment(const GridCover& cover, std::size_t factor,
                               const std::vector<std::size_t>& members,
                               const std::vector<GridBox>& member_intersection, std::size_t pos,
                               std::uint32_t face_meet, std::vector<std::uint32_t>& chosen,
                               CounterFamily& out) {
    const GridGeometry& g = cover.geom;
    std::uint32_t full = (1u << g.spec.k[factor]) - 1u;
    if (pos == members.size()) {
        if (face_meet == 0) return false;  // empty face intersection: condition vacuous
        std::uint32_t opposite = full & ~face_meet;
        for (const GridBox& b : member_intersection)
            if (box_meets_embedded_face(b, g.resolution, factor, opposite)) {
                out.factor = factor;
                out.elements = members;
                out.face_masks = chosen;
                return true;
            }
        return false;
    }
    std::uint32_t inc = cover.incidence[members[pos]][factor];
    for (int j = 0; j < g.spec.k[factor]; ++j) {
        if (!(inc & (1u << j))) continue;
        std::uint32_t face = full & ~(1u << j);
        chosen.push_back(face);
        if (find_violating_assignment(cover, factor, members, member_intersection, pos + 1,
                                      face_meet & face, chosen, out))
            return true;
        chosen.pop_back();
    }
    return false;
}

}  // namespace

SeparatingCheck is_separating(const GridCover& cover) {
    SeparatingCheck res;
    const GridGeometry& g = cover.geom;
    std::size_t n = cover.elements.size();
    if (n > 20) throw std::length_error("is_separating: too many elements to enumerate subfamilies");
    for (std::size_t factor = 0; factor < g.spec.factors(); ++factor) {
        // elements incident to at least one (k-1)-face of this factor
        std::vector<std::size_t> candidates;
        for (std::size_t e = 0; e < n; ++e)
            if (cover.incidence[e][factor]) candidates.push_back(e);
        std::size_t c = candidates.size();
        for (std::size_t sub = 1; sub < (std::size_t{1} << c); ++sub) {
            std::vector<std::size_t> members;
            for (std::size_t i = 0; i < c; ++i)
                if (sub & (std::size_t{1} << i)) members.push_back(candidates[i]);
            // geometric intersection of the members, reused across face choices
            std::vector<GridBox> inter = cover.elements[members[0]].boxes;
            for (std::size_t i = 1; i < members.size() && !inter.empty(); ++i)
                inter = intersect_element_list(inter, cover.elements[members[i]], g.resolution);
            if (inter.empty()) continue;
            std::uint32_t full = (1u << g.spec.k[factor]) - 1u;
            std::vector<std::uint32_t> chosen;
            CounterFamily cf;
            if (find_violating_assignment(cover, factor, members, inter, 0, full, chosen, cf)) {
                res.separating = false;
                res.counterexample = std::move(cf);
                return res;
            }
        }
    }
    return res;
}

std::vector<ProductPoint> phi_alpha(const GridCover& cover) {
    const GridGeometry& g = cover.geom;
    std::vector<ProductPoint> out;
    for (std::size_t e = 0; e < cover.elements.size(); ++e) {
        ProductPoint p = product_center(g.spec);
        for (std::size_t f = 0; f < g.spec.factors(); ++f) {
            std::uint32_t inc = cover.incidence[e][f];
            if (!inc) continue;
            std::uint32_t full = (1u << g.spec.k[f]) - 1u;
            std::uint32_t best_face = 0;
            for (int j = 0; j < g.spec.k[f]; ++j) {
                if (!(inc & (1u << j))) continue;
                std::uint32_t face = full & ~(1u << j);
                if (best_face == 0 || mask_lex_less(face, best_face)) best_face = face;
            }
            // opposite of the chosen (k-1)-face is a vertex
            std::uint32_t opp = full & ~best_face;
            p.coords[f] = simplex_vertex(g.spec.k[f], __builtin_ctz(opp));
        }
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

// L-infinity distance from x (one factor's coordinates) to box ∩ simplex,
// in the same units as x (the box corners are integers over r).
Rational factor_box_distance(const std::vector<Rational>& x, const std::vector<std::array<int, 2>>& range,
                             int r) {
    std::size_t k = x.size();
    Rational rr(static_cast<long long>(r));
    std::vector<Rational> lo(k), hi(k);
    for (std::size_t j = 0; j < k; ++j) {
        lo[j] = Rational(range[j][0]) / rr;
        hi[j] = Rational(range[j][1]) / rr;
    }
    // t0: per-coordinate feasibility
    Rational t(0);
    for (std::size_t j = 0; j < k; ++j) {
        t = max(t, lo[j] - x[j]);
        t = max(t, x[j] - hi[j]);
    }
    // Grow t until sum_j max(lo_j, x_j - t) <= 1 and sum_j min(hi_j, x_j + t) >= 1.
    // Both sides are monotone piecewise-linear in t with breakpoints below.
    auto lower_sum = [&](const Rational& tt) {
        Rational s(0);
        for (std::size_t j = 0; j < k; ++j) s += max(lo[j], x[j] - tt);
        return s;
    };
    auto upper_sum = [&](const Rational& tt) {
        Rational s(0);
        for (std::size_t j = 0; j < k; ++j) s += min(hi[j], x[j] + tt);
        return s;
    };
    // Walk the piecewise-linear sums segment by segment. Breakpoints are where
    // a term saturates at its box corner.
    auto next_break = [&](const std::vector<Rational>& candidates, const Rational& tt) {
        const Rational* best = nullptr;
        for (const Rational& c : candidates)
            if (c > tt && (!best || c < *best)) best = &c;
        return best;
    };
    Rational one(1);
    {
        std::vector<Rational> breaks;
        for (std::size_t j = 0; j < k; ++j) breaks.push_back(x[j] - lo[j]);
        while (lower_sum(t) > one) {
            long long slope = 0;
            for (std::size_t j = 0; j < k; ++j)
                if (x[j] - t > lo[j]) ++slope;
            if (slope == 0) throw std::logic_error("factor_box_distance: empty box slice");
            Rational target = t + (lower_sum(t) - one) / Rational(slope);
            const Rational* nb = next_break(breaks, t);
            if (!nb || target <= *nb) {
                t = target;
                break;
            }
            t = *nb;
        }
    }
    {
        std::vector<Rational> breaks;
        for (std::size_t j = 0; j < k; ++j) breaks.push_back(hi[j] - x[j]);
        while (upper_sum(t) < one) {
            long long slope = 0;
            for (std::size_t j = 0; j < k; ++j)
                if (x[j] + t < hi[j]) ++slope;
            if (slope == 0) throw std::logic_error("factor_box_distance: empty box slice");
            Rational target = t + (one - upper_sum(t)) / Rational(slope);
            const Rational* nb = next_break(breaks, t);
            if (!nb || target <= *nb) {
                t = target;
                break;
            }
            t = *nb;
        }
    }
    return t;
}

Rational box_distance(const ProductPoint& x, const GridBox& b, int r) {
    Rational d(0);
    for (std::size_t f = 0; f < x.coords.size(); ++f)
        d = max(d, factor_box_distance(x.coords[f], b.range[f], r));
    return d;
}

bool point_in_box(const ProductPoint& x, const GridBox& b, int r) {
    Rational rr(static_cast<long long>(r));
    for (std::size_t f = 0; f < x.coords.size(); ++f)
        for (std::size_t j = 0; j < x.coords[f].size(); ++j) {
            Rational scaled = x.coords[f][j] * rr;
            if (scaled < Rational(b.range[f][j][0]) || scaled > Rational(b.range[f][j][1])) return false;
        }
    return true;
}

bool point_in_element(const ProductPoint& x, const CoverElement& e, int r) {
    for (const GridBox& b : e.boxes)
        if (point_in_box(x, b, r)) return true;
    return false;
}

}  // namespace

ProductPoint g_map(const GridCover& cover, const ProductPoint& x) {
    const GridGeometry& g = cover.geom;
    x.validate(g.spec);
    std::size_t n = cover.elements.size();

    std::vector<Rational> w(n, Rational(0));
    Rational total(0);
    for (std::size_t e = 0; e < n; ++e) {
        // distance to the union of the cells missing from element e
        bool has_complement = false;
        Rational dmin(0);
        bool first = true;
        for (std::size_t id = 0; id < g.product_cell_count(); ++id) {
            if (std::binary_search(cover.elements[e].cells.begin(), cover.elements[e].cells.end(), id))
                continue;
            has_complement = true;
            Rational d = box_distance(x, cell_box(g, id), g.resolution);
            if (first || d < dmin) dmin = d;
            first = false;
            if (dmin.is_zero()) break;
        }
        w[e] = has_complement ? dmin : Rational(1);
        total += w[e];
    }
    if (total.is_zero()) {
        // x sits on the skeleton where every private region degenerates;
        // fall back to membership indicators, which keeps supp f_U inside U.
        for (std::size_t e = 0; e < n; ++e)
            w[e] = point_in_element(x, cover.elements[e], g.resolution) ? Rational(1) : Rational(0);
        for (const Rational& v : w) total += v;
        if (total.is_zero()) throw std::logic_error("g_map: point outside every element");
    }

    std::vector<ProductPoint> phi = phi_alpha(cover);
    ProductPoint out;
    for (std::size_t f = 0; f < g.spec.factors(); ++f)
        out.coords.emplace_back(static_cast<std::size_t>(g.spec.k[f]), Rational(0));
    for (std::size_t e = 0; e < n; ++e) {
        if (w[e].is_zero()) continue;
        Rational fe = w[e] / total;
        for (std::size_t f = 0; f < g.spec.factors(); ++f)
            for (std::size_t j = 0; j < out.coords[f].size(); ++j)
                out.coords[f][j] += fe * phi[e].coords[f][j];
    }
    out.validate(g.spec);
    return out;
}

BoundaryCheckReport boundary_displacement_check(const GridCover& cover,
                                                const std::vector<ProductPoint>& samples) {
    if (!is_separating(cover).separating)
        throw std::invalid_argument("boundary_displacement_check: cover is not separating");
    BoundaryCheckReport rep;
    for (const ProductPoint& x : samples) {
        if (!on_boundary(x))
            throw std::invalid_argument("boundary_displacement_check: sample not on the boundary");
        ProductPoint gx = g_map(cover, x);
        ++rep.samples;
        if (!on_boundary(gx) || gx == x) rep.violations.emplace_back(x, gx);
    }
    return rep;
}

namespace {

// Distinct candidate elements for the box-cover searches: products of
// contiguous per-coordinate cell ranges, keyed by their cell sets.
std::vector<std::vector<std::size_t>> candidate_box_elements(const GridGeometry& g) {
    std::size_t nf = g.spec.factors();
    // per factor: dedup cell sets of all coordinate-range boxes
    std::vector<std::vector<std::vector<std::size_t>>> factor_bricks(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        int k = g.spec.k[f];
        std::vector<std::vector<std::array<int, 2>>> ranges;
        std::vector<std::array<int, 2>> cur;
        // enumerate per-coordinate [lo, hi] with 0 <= lo < hi <= r
        std::function<void()> rec = [&]() {
            if (static_cast<int>(cur.size()) == k) {
                ranges.push_back(cur);
                return;
            }
            for (int lo = 0; lo < g.resolution; ++lo)
                for (int hi = lo + 1; hi <= g.resolution; ++hi) {
                    cur.push_back({lo, hi});
                    rec();
                    cur.pop_back();
                }
        };
        rec();
        std::map<std::vector<std::size_t>, bool> seen;
        for (const auto& rg : ranges) {
            std::vector<std::size_t> cells;
            for (std::size_t ci = 0; ci < g.factor_cells[f].size(); ++ci) {
                const auto& s = g.factor_cells[f][ci];
                bool inside = true;
                for (int j = 0; j < k && inside; ++j)
                    inside = rg[static_cast<std::size_t>(j)][0] <= s[static_cast<std::size_t>(j)] &&
                             s[static_cast<std::size_t>(j)] + 1 <= rg[static_cast<std::size_t>(j)][1];
                if (inside) cells.push_back(ci);
            }
            if (!cells.empty()) seen.emplace(std::move(cells), true);
        }
        for (const auto& kv : seen) factor_bricks[f].push_back(kv.first);
    }
    // product elements: tuples of factor bricks -> product cell id sets
    std::vector<std::vector<std::size_t>> elements;
    std::vector<std::size_t> idx(nf, 0);
    do {
        std::vector<std::vector<std::size_t>> parts;
        for (std::size_t f = 0; f < nf; ++f) parts.push_back(factor_bricks[f][idx[f]]);
        std::vector<std::size_t> cells;
        std::vector<std::size_t> pick(nf, 0);
        do {
            std::vector<std::size_t> per(nf);
            for (std::size_t f = 0; f < nf; ++f) per[f] = parts[f][pick[f]];
            cells.push_back(g.encode_cell(per));
        } while (advance_counter(pick, [&](std::size_t f) { return parts[f].size(); }));
        std::sort(cells.begin(), cells.end());
        elements.push_back(std::move(cells));
    } while (advance_counter(idx, [&](std::size_t f) { return factor_bricks[f].size(); }));
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    return elements;
}

struct PreparedElement {
    std::vector<std::size_t> cells;
    CoverElement element;
    std::vector<std::uint32_t> incidence;
    std::vector<bool> cell_flags;
};

PreparedElement prepare_element(const GridGeometry& g, const std::vector<std::size_t>& cells) {
    PreparedElement p;
    p.cells = cells;
    p.element.cells = cells;
    for (std::size_t id : cells) p.element.boxes.push_back(cell_box(g, id));
    p.incidence = element_incidence(g, p.element);
    p.cell_flags.assign(g.product_cell_count(), false);
    for (std::size_t id : cells) p.cell_flags[id] = true;
    return p;
}

GridCover cover_from_prepared(const GridGeometry& g, const std::vector<PreparedElement>& pool,
                              const std::vector<std::size_t>& chosen) {
    GridCover c;
    c.geom = g;
    for (std::size_t i : chosen) {
        c.elements.push_back(pool[i].element);
        c.incidence.push_back(pool[i].incidence);
    }
    return c;
}

}  // namespace

namespace {

// Subset search shared by the two minimizers. Both prunings are lossless:
// a violating subfamily stays violating in every superset, and the order of a
// cover never drops when elements are added.
struct CoverSearch {
    const GridGeometry& g;
    const std::vector<PreparedElement>& pool;
    std::size_t max_elements;
    bool require_separating;

    std::size_t nodes = 0;
    bool found = false;
    int best_order = 0;
    std::vector<std::size_t> best_set;

    void run() {
        std::vector<std::size_t> current;
        std::vector<std::size_t> cover_count(g.product_cell_count(), 0);
        dfs(0, current, cover_count, 0);
    }

    void dfs(std::size_t next, std::vector<std::size_t>& current,
             std::vector<std::size_t>& cover_count, std::size_t covered) {
        ++nodes;
        int ord = order_of_elements_in(current);
        if (found && ord >= best_order) return;
        if (require_separating && !partial_separating(current)) return;
        if (covered == g.product_cell_count() && !current.empty()) {
            // extensions only raise the order, so record and stop here
            found = true;
            best_order = ord;
            best_set = current;
            return;
        }
        if (current.size() == max_elements || next == pool.size()) return;
        // include pool[next]
        current.push_back(next);
        std::size_t newly = 0;
        for (std::size_t id : pool[next].cells)
            if (cover_count[id]++ == 0) ++newly;
        dfs(next + 1, current, cover_count, covered + newly);
        for (std::size_t id : pool[next].cells) --cover_count[id];
        current.pop_back();
        // exclude pool[next]
        dfs(next + 1, current, cover_count, covered);
    }

    int order_of_elements_in(const std::vector<std::size_t>& idx) const {
        std::vector<CoverElement> es;
        es.reserve(idx.size());
        for (std::size_t i : idx) es.push_back(pool[i].element);
        return es.empty() ? 0 : order_of_elements(g, es);
    }

    bool partial_separating(const std::vector<std::size_t>& idx) const {
        if (idx.empty()) return true;
        GridCover cand = cover_from_prepared(g, pool, idx);
        return is_separating(cand).separating;
    }
};

}  // namespace

MinSeparatingResult min_separating_order(const ProductSpec& spec, const CoverSearchBudget& budget) {
    GridGeometry g = GridGeometry::make(spec, budget.resolution);
    MinSeparatingResult res;
    res.dim_bound = spec.dimension();
    res.strong_bound = spec.strong_order_bound();

    auto cell_sets = candidate_box_elements(g);
    std::vector<PreparedElement> pool;
    pool.reserve(cell_sets.size());
    for (const auto& cs : cell_sets) {
        PreparedElement p = prepare_element(g, cs);
        // an element meeting a face and its embedded opposite can never sit in
        // a separating cover (one-element subfamily)
        GridCover single;
        single.geom = g;
        single.elements = {p.element};
        single.incidence = {p.incidence};
        if (is_separating(single).separating) pool.push_back(std::move(p));
    }
    if (pool.size() > budget.max_candidate_elements)
        throw std::length_error("min_separating_order: candidate pool exceeds budget (" +
                                std::to_string(pool.size()) + " elements)");

    CoverSearch search{g, pool, budget.max_elements, /*require_separating=*/true, 0, false, 0, {}};
    search.run();
    res.covers_enumerated = search.nodes;
    if (search.found) {
        res.found = true;
        res.min_order = search.best_order;
        res.witness = cover_from_prepared(g, pool, search.best_set);
    }
    res.strong_bound_met = res.found && res.min_order >= res.strong_bound;
    return res;
}

RefinementResult min_order_refinement(const GridCover& cover, const CoverSearchBudget& budget) {
    RefinementResult res;
    res.order = cover_order(cover);  // the cover refines itself

    for (int r2 = cover.geom.resolution; r2 <= budget.resolution; r2 += cover.geom.resolution) {
        GridGeometry g2 = GridGeometry::make(cover.geom.spec, r2);
        int m = r2 / cover.geom.resolution;

        // parent cell (at the cover's resolution) of a fine cell
        auto parent_id = [&](std::size_t fine_id) {
            auto per = g2.decode_cell(fine_id);
            std::vector<std::size_t> coarse(per.size());
            for (std::size_t f = 0; f < per.size(); ++f) {
                const auto& s = g2.factor_cells[f][per[f]];
                std::vector<int> t(s.size());
                for (std::size_t j = 0; j < s.size(); ++j) t[j] = s[j] / m;
                const auto& cells = cover.geom.factor_cells[f];
                auto it = std::find(cells.begin(), cells.end(), t);
                if (it == cells.end()) throw std::logic_error("min_order_refinement: orphan fine cell");
                coarse[f] = static_cast<std::size_t>(it - cells.begin());
            }
            return cover.geom.encode_cell(coarse);
        };

        auto cell_sets = candidate_box_elements(g2);
        std::vector<std::vector<std::size_t>> fine_candidates;
        for (const auto& cs : cell_sets) {
            // keep candidates contained in some element of the cover
            bool fits_any = false;
            for (const auto& e : cover.elements) {
                bool fits = true;
                for (std::size_t id : cs) {
                    if (!std::binary_search(e.cells.begin(), e.cells.end(), parent_id(id))) {
                        fits = false;
                        break;
                    }
                }
                if (fits) {
                    fits_any = true;
                    break;
                }
            }
            if (fits_any) fine_candidates.push_back(cs);
        }
        if (fine_candidates.size() > budget.max_candidate_elements) {
            res.exact = false;
            continue;
        }
        std::vector<PreparedElement> pool;
        for (const auto& cs : fine_candidates) pool.push_back(prepare_element(g2, cs));

        CoverSearch search{g2, pool, budget.max_elements, /*require_separating=*/false, 0, false, 0, {}};
        search.found = true;  // seeded by the cover itself
        search.best_order = res.order;
        search.run();
        res.order = std::min(res.order, search.best_order);
    }
    return res;
}

}  // namespace meandim
