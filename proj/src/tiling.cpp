#include "meandim/tiling.hpp"

#include <stdexcept>

namespace meandim {

std::pair<std::size_t, std::size_t> FolnerData::portion_range(std::size_t p) const {
    if (p == 0 || p >= boundaries.size())
        throw std::out_of_range("FolnerData: portion index out of range");
    return {boundaries[p - 1] + 1, boundaries[p]};
}

const FiniteSubset& TilingScheme::center_set(std::size_t k, std::size_t n) const {
    auto it = centers.find({k, n});
    if (it == centers.end())
        throw std::out_of_range("TilingScheme: no center set stored for (k=" + std::to_string(k) +
                                ", n=" + std::to_string(n) + ")");
    return it->second;
}

TilingScheme build_dyadic_tiling(std::size_t depth) {
    if (depth < 2) throw std::invalid_argument("build_dyadic_tiling: depth must be >= 2");
    if (depth > 24) throw std::length_error("build_dyadic_tiling: sets beyond depth 24 do not fit memory");
    TilingScheme s;
    s.family = GroupFamily::IntegerLine;
    s.folner.boundaries.push_back(0);
    for (std::size_t k = 1; k <= depth; ++k) {
        s.folner.sets.push_back(FiniteSubset::interval(0, (std::int64_t{1} << k) - 1));
        s.folner.boundaries.push_back(k);
    }
    for (std::size_t k = 1; k <= depth; ++k) {
        for (std::size_t n = k + 1; n <= depth; ++n) {
            std::vector<Element> c;
            std::int64_t step = std::int64_t{1} << k;
            std::int64_t count = std::int64_t{1} << (n - k);
            for (std::int64_t i = 0; i < count; ++i) c.push_back({i * step, 0});
            s.centers[{k, n}] = FiniteSubset(std::move(c));
        }
    }
    return s;
}

TilingScheme build_box_tiling_2d(std::size_t depth) {
    if (depth < 2) throw std::invalid_argument("build_box_tiling_2d: depth must be >= 2");
    if (depth > 12) throw std::length_error("build_box_tiling_2d: sets beyond depth 12 do not fit memory");
    TilingScheme s;
    s.family = GroupFamily::IntegerGrid2D;
    s.folner.boundaries.push_back(0);
    for (std::size_t k = 1; k <= depth; ++k) {
        std::int64_t hi = (std::int64_t{1} << k) - 1;
        s.folner.sets.push_back(FiniteSubset::box(0, hi, 0, hi));
        s.folner.boundaries.push_back(k);
    }
    for (std::size_t k = 1; k <= depth; ++k) {
        for (std::size_t n = k + 1; n <= depth; ++n) {
            std::vector<Element> c;
            std::int64_t step = std::int64_t{1} << k;
            std::int64_t count = std::int64_t{1} << (n - k);
            for (std::int64_t i = 0; i < count; ++i)
                for (std::int64_t j = 0; j < count; ++j) c.push_back({i * step, j * step});
            s.centers[{k, n}] = FiniteSubset(std::move(c));
        }
    }
    return s;
}

namespace {

// Union of the portion's translates vs F_n; first discrepancy wins.
std::optional<TilingViolation> check_partition(const TilingScheme& scheme, std::size_t portion,
                                               std::size_t n) {
    GroupContext ctx(scheme.family);
    auto [k_lo, k_hi] = scheme.folner.portion_range(portion);
    const FiniteSubset& fn = scheme.folner.set(n);

    FiniteSubset covered;
    std::vector<Element> overlaps;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        if (!scheme.has_centers(k, n)) continue;
        for (const Element& c : scheme.center_set(k, n).elements()) {
            FiniteSubset tile = translate(scheme.folner.set(k), c, TranslationSide::Right, ctx);
            FiniteSubset clash = covered.set_intersection(tile);
            for (const Element& e : clash.elements()) overlaps.push_back(e);
            covered = covered.set_union(tile);
        }
    }
    if (!overlaps.empty()) {
        TilingViolation v;
        v.n = n;
        v.overlap = true;
        v.elements = FiniteSubset(std::move(overlaps)).elements();
        return v;
    }
    if (!(covered == fn)) {
        TilingViolation v;
        v.n = n;
        v.overlap = false;
        v.elements = fn.symmetric_difference(covered).elements();
        return v;
    }
    return std::nullopt;
}

}  // namespace

TilingCheck verify_tiling(const TilingScheme& scheme) {
    TilingCheck res;
    for (std::size_t p = 1; p <= scheme.folner.portion_count(); ++p) {
        std::size_t past = scheme.folner.boundaries[p];
        for (std::size_t n = past + 1; n <= scheme.folner.depth(); ++n) {
            auto [k_lo, k_hi] = scheme.folner.portion_range(p);
            bool any = false;
            for (std::size_t k = k_lo; k <= k_hi; ++k) any = any || scheme.has_centers(k, n);
            if (!any) continue;  // verification quantifies over stored data only
            if (auto v = check_partition(scheme, p, n)) {
                res.ok = false;
                res.violation = std::move(v);
                return res;
            }
        }
    }
    return res;
}

std::vector<Tile> tile_decompose(const TilingScheme& scheme, std::size_t n, std::size_t portion) {
    std::size_t past = scheme.folner.boundaries.at(portion);
    if (n <= past)
        throw std::invalid_argument("tile_decompose: n must exceed the portion's last index");
    GroupContext ctx(scheme.family);
    auto [k_lo, k_hi] = scheme.folner.portion_range(portion);
    bool any = false;
    std::vector<Tile> tiles;
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
        if (!scheme.has_centers(k, n)) continue;
        any = true;
        for (const Element& c : scheme.center_set(k, n).elements()) {
            Tile t;
            t.k = k;
            t.center = c;
            t.cells = translate(scheme.folner.set(k), c, TranslationSide::Right, ctx);
            tiles.push_back(std::move(t));
        }
    }
    if (!any)
        throw std::invalid_argument("tile_decompose: scheme has no centers for (n=" +
                                    std::to_string(n) + ", portion=" + std::to_string(portion) + ")");
    if (auto v = check_partition(scheme, portion, n))
        throw std::runtime_error("tile_decompose: translates do not partition F_n at n=" +
                                 std::to_string(v->n));
    return tiles;
}

}  // namespace meandim
