#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "meandim/cover.hpp"
#include "meandim/io.hpp"
#include "meandim/lp.hpp"

using namespace meandim;

namespace {

const ProductSpec kSegment{{2}};
const ProductSpec kTriangle{{3}};
const ProductSpec kSquare{{2, 2}};

// Segment cells at resolution r are ordered left to right (cell i covers
// [i/r, (i+1)/r] in the first coordinate).
GridCover segment_cover(int r, const std::vector<std::vector<std::size_t>>& cells) {
    return GridCover::from_cells(kSegment, r, cells);
}

ProductPoint segment_point(const Rational& x0) {
    return ProductPoint{{{x0, Rational(1) - x0}}};
}

}  // namespace

TEST_CASE("grid geometry cell counts") {
    CHECK(GridGeometry::make(kSegment, 5).factor_cells[0].size() == 5);
    CHECK(GridGeometry::make(kTriangle, 2).factor_cells[0].size() == 4);
    CHECK(GridGeometry::make(kSquare, 3).product_cell_count() == 9);
    CHECK(GridGeometry::make(kTriangle, 3).factor_cells[0].size() == 9);
}

TEST_CASE("cover construction validates coverage") {
    CHECK_THROWS(segment_cover(5, {{0, 1, 2}}));  // cells 3,4 uncovered
    GridCover ok = segment_cover(5, {{0, 1, 2}, {2, 3, 4}});
    CHECK(ok.elements.size() == 2);
    // left element touches only the x0=0 face (mask {1}), right only x0=1 (mask {0})
    CHECK(ok.incidence[0][0] == 0b01);  // bit j set when the face missing j is met
    CHECK(ok.incidence[1][0] == 0b10);
}

TEST_CASE("cover order") {
    CHECK(cover_order(segment_cover(5, {{0, 1, 2, 3, 4}})) == 0);
    CHECK(cover_order(segment_cover(5, {{0, 1}, {1, 2, 3, 4}})) == 1);

    // brickwork on the square at r=4, staggered rows
    GridGeometry g = GridGeometry::make(kSquare, 4);
    auto id = [&](std::size_t x, std::size_t y) { return g.encode_cell({x, y}); };
    std::vector<std::vector<std::size_t>> rows;
    rows.push_back({id(0, 0), id(0, 1), id(1, 0), id(1, 1), id(2, 0), id(2, 1)});  // x 0..2, y 0..1
    rows.push_back({id(3, 0), id(3, 1)});
    rows.push_back({id(0, 2), id(0, 3)});
    rows.push_back({id(1, 2), id(1, 3), id(2, 2), id(2, 3), id(3, 2), id(3, 3)});
    GridCover brick = GridCover::from_cells(kSquare, 4, rows);
    CHECK(cover_order(brick) == 2);
}

TEST_CASE("separating predicate") {
    GridCover two = segment_cover(5, {{0, 1, 2}, {2, 3, 4}});
    CHECK(is_separating(two).separating);

    GridCover one = segment_cover(5, {{0, 1, 2, 3, 4}});
    SeparatingCheck c = is_separating(one);
    REQUIRE_FALSE(c.separating);
    REQUIRE(c.counterexample.has_value());
    CHECK(c.counterexample->elements == std::vector<std::size_t>{0});

    // fine brickwork of the square avoiding opposite edges
    GridGeometry g = GridGeometry::make(kSquare, 3);
    auto id = [&](std::size_t x, std::size_t y) { return g.encode_cell({x, y}); };
    GridCover brick = GridCover::from_cells(
        kSquare, 3,
        {{id(0, 0), id(1, 0)}, {id(2, 0)},
         {id(0, 1)}, {id(1, 1), id(2, 1)},
         {id(0, 2), id(1, 2)}, {id(2, 2)}});
    CHECK(is_separating(brick).separating);
}

TEST_CASE("phi assigns centers inside and opposite vertices at faces") {
    GridCover two = segment_cover(5, {{0, 1, 2}, {2, 3, 4}});
    std::vector<ProductPoint> phi = phi_alpha(two);
    CHECK(phi[0].coords[0] == std::vector<Rational>{Rational(1), Rational(0)});
    CHECK(phi[1].coords[0] == std::vector<Rational>{Rational(0), Rational(1)});

    GridCover interior = segment_cover(5, {{0}, {1, 2, 3}, {2, 3, 4}});
    std::vector<ProductPoint> phi2 = phi_alpha(interior);
    CHECK(phi2[1].coords[0] == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

    // lexicographically smallest incident face wins: an element touching both
    // vertices of the segment picks the face {0} and lands on vertex 1
    GridCover full = segment_cover(5, {{0, 1, 2, 3, 4}});
    std::vector<ProductPoint> phi3 = phi_alpha(full);
    CHECK(phi3[0].coords[0] == std::vector<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("g map at interior and equidistant points") {
    GridCover two = segment_cover(5, {{0, 1, 2}, {2, 3, 4}});
    // interior to the left element only
    CHECK(g_map(two, segment_point(Rational(1, 10))) ==
          ProductPoint{{{Rational(1), Rational(0)}}});
    // equidistant in both: the midpoint of the two images
    CHECK(g_map(two, segment_point(Rational(1, 2))) ==
          ProductPoint{{{Rational(1, 2), Rational(1, 2)}}});
}

namespace {

// Independent route to the weight: the distance-to-box program solved as an LP.
Rational lp_box_distance(const ProductPoint& x, const GridBox& box, int r) {
    std::size_t nvars = 0;
    std::vector<std::pair<std::size_t, std::size_t>> offsets;  // (factor offset, k)
    for (const auto& fr : box.range) {
        offsets.emplace_back(nvars, fr.size());
        nvars += fr.size();
    }
    LpProblem lp;
    lp.num_vars = nvars + 1;  // y coordinates then t
    lp.objective.assign(lp.num_vars, Rational(0));
    lp.objective[nvars] = Rational(1);
    for (std::size_t f = 0; f < box.range.size(); ++f) {
        auto [off, k] = offsets[f];
        for (std::size_t j = 0; j < k; ++j) {
            {
                auto& up = lp.add_row(Relation::LessEq, x.coords[f][j]);
                up.coeffs[off + j] = Rational(1);
                up.coeffs[nvars] = Rational(-1);
            }
            {
                auto& dn = lp.add_row(Relation::GreaterEq, x.coords[f][j]);
                dn.coeffs[off + j] = Rational(1);
                dn.coeffs[nvars] = Rational(1);
            }
            lp.add_row(Relation::LessEq, Rational(box.range[f][j][1], r)).coeffs[off + j] = Rational(1);
            lp.add_row(Relation::GreaterEq, Rational(box.range[f][j][0], r)).coeffs[off + j] =
                Rational(1);
        }
        auto& sum = lp.add_row(Relation::Equal, Rational(1));
        for (std::size_t j = 0; j < k; ++j) sum.coeffs[off + j] = Rational(1);
    }
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    return s.objective;
}

ProductPoint g_map_oracle(const GridCover& cover, const ProductPoint& x) {
    // naive re-evaluation of the formula with LP distances
    const GridGeometry& g = cover.geom;
    std::vector<ProductPoint> phi = phi_alpha(cover);
    std::vector<Rational> w;
    Rational total(0);
    for (const auto& e : cover.elements) {
        Rational dmin;
        bool first = true, any = false;
        for (std::size_t id = 0; id < g.product_cell_count(); ++id) {
            if (std::binary_search(e.cells.begin(), e.cells.end(), id)) continue;
            any = true;
            // distance to that cell's box
            auto per = g.decode_cell(id);
            GridBox b;
            for (std::size_t f = 0; f < g.factor_cells.size(); ++f) {
                std::vector<std::array<int, 2>> rr;
                for (int sj : g.factor_cells[f][per[f]]) rr.push_back({sj, sj + 1});
                b.range.push_back(std::move(rr));
            }
            Rational d = lp_box_distance(x, b, g.resolution);
            if (first || d < dmin) dmin = d;
            first = false;
        }
        Rational wi = any ? dmin : Rational(1);
        w.push_back(wi);
        total += wi;
    }
    ProductPoint out;
    for (int k : g.spec.k) out.coords.emplace_back(static_cast<std::size_t>(k), Rational(0));
    REQUIRE(total.sign() > 0);
    for (std::size_t e = 0; e < cover.elements.size(); ++e)
        for (std::size_t f = 0; f < out.coords.size(); ++f)
            for (std::size_t j = 0; j < out.coords[f].size(); ++j)
                out.coords[f][j] += w[e] / total * phi[e].coords[f][j];
    return out;
}

}  // namespace

TEST_CASE("g map agrees with the naive LP re-evaluation") {
    GridGeometry g = GridGeometry::make(kSquare, 2);
    auto id = [&](std::size_t x, std::size_t y) { return g.encode_cell({x, y}); };
    GridCover cover = GridCover::from_cells(
        kSquare, 2, {{id(0, 0), id(0, 1)}, {id(1, 0), id(1, 1)}, {id(0, 0), id(1, 0)}});
    Prng rng(13);
    for (int iter = 0; iter < 25; ++iter) {
        ProductPoint x{{rng.simplex_point(2), rng.simplex_point(2)}};
        CHECK(g_map(cover, x) == g_map_oracle(cover, x));
    }
}

TEST_CASE("boundary displacement on the segment") {
    GridCover two = segment_cover(5, {{0, 1, 2}, {2, 3, 4}});
    ProductPoint zero = segment_point(Rational(0));
    ProductPoint one = segment_point(Rational(1));

    BoundaryCheckReport rep = boundary_displacement_check(two, {zero, one});
    CHECK(rep.samples == 2);
    CHECK(rep.ok());
    CHECK(g_map(two, zero) == one);  // g(0) = 1

    GridCover full = segment_cover(5, {{0, 1, 2, 3, 4}});
    CHECK_THROWS(boundary_displacement_check(full, {zero}));          // not separating
    CHECK_THROWS(boundary_displacement_check(two, {segment_point(Rational(1, 2))}));  // off boundary
}

TEST_CASE("minimal separating order on the segment") {
    MinSeparatingResult r = min_separating_order(kSegment, {6, 3, 256});
    REQUIRE(r.found);
    CHECK(r.min_order == 1);
    CHECK(r.dim_bound == 1);
    CHECK(r.strong_bound == 2);
    CHECK_FALSE(r.strong_bound_met);  // the two-interval witness beats sum k_i
    CHECK(is_separating(r.witness).separating);
    CHECK(cover_order(r.witness) == 1);
    CHECK(r.min_order >= r.dim_bound);
}

TEST_CASE("no separating box cover of the triangle exists at resolution 2") {
    // the two cells around any corner force an edge-midpoint meeting on the
    // opposite edge; the class minimum needs resolution 3
    MinSeparatingResult r = min_separating_order(kTriangle, {6, 2, 64});
    CHECK_FALSE(r.found);
}

TEST_CASE("minimal separating order on the triangle at resolution 3") {
    MinSeparatingResult r = min_separating_order(kTriangle, {6, 3, 256});
    REQUIRE(r.found);
    CHECK(r.min_order == 5);  // measured class minimum with at most 6 elements
    CHECK(r.min_order >= r.dim_bound);
    CHECK(r.strong_bound_met);  // 5 >= 3 here, unlike the segment case
    CHECK(is_separating(r.witness).separating);
    CHECK(cover_order(r.witness) == 5);
}

TEST_CASE("minimal separating order on the square product") {
    MinSeparatingResult r = min_separating_order(kSquare, {6, 3, 256});
    REQUIRE(r.found);
    CHECK(r.min_order == 2);  // brickwork witness
    CHECK(r.min_order >= r.dim_bound);
    CHECK(r.strong_bound == 4);
    CHECK_FALSE(r.strong_bound_met);  // order 2 beats sum k_i = 4
    CHECK(is_separating(r.witness).separating);

    // the displacement claim holds at every product vertex of the witness
    std::vector<ProductPoint> vertices;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            vertices.push_back(ProductPoint{{{Rational(a == 0), Rational(a == 1)},
                                             {Rational(b == 0), Rational(b == 1)}}});
    BoundaryCheckReport rep = boundary_displacement_check(r.witness, vertices);
    CHECK(rep.ok());
}

TEST_CASE("refinement floor") {
    CHECK(min_order_refinement(segment_cover(5, {{0, 1, 2, 3, 4}}), {6, 5, 64}).order == 0);
    CHECK(min_order_refinement(segment_cover(5, {{0, 1, 2}, {2, 3, 4}}), {6, 5, 64}).order == 1);

    GridGeometry g = GridGeometry::make(kSquare, 2);
    std::vector<std::size_t> all;
    for (std::size_t i = 0; i < g.product_cell_count(); ++i) all.push_back(i);
    CHECK(min_order_refinement(GridCover::from_cells(kSquare, 2, {all}), {6, 2, 64}).order == 0);

    // finer resolutions are searched too (multiples of the cover's grid);
    // two touching halves cannot drop below order 1 at any of them
    RefinementResult multi = min_order_refinement(segment_cover(2, {{0}, {1}}), {6, 6, 256});
    CHECK(multi.order == 1);
    CHECK(multi.exact);
}

TEST_CASE("incidence flags agree with recomputation from cells") {
    GridGeometry g = GridGeometry::make(kSquare, 3);
    auto id = [&](std::size_t x, std::size_t y) { return g.encode_cell({x, y}); };
    GridCover cover = GridCover::from_cells(
        kSquare, 3, {{id(0, 0), id(1, 0), id(0, 1)}, {id(2, 0), id(2, 1), id(2, 2)},
                     {id(0, 2), id(1, 2)}, {id(1, 1)}});
    std::vector<std::size_t> everything;
    for (std::size_t i = 0; i < g.product_cell_count(); ++i) everything.push_back(i);
    for (std::size_t e = 0; e < cover.elements.size(); ++e) {
        // rebuild one element from its raw cell list and compare the flags
        GridCover rebuilt = GridCover::from_cells(kSquare, 3, {cover.elements[e].cells, everything});
        CHECK(rebuilt.incidence[0] == cover.incidence[e]);
    }
}
