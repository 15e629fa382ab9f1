#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "meandim/io.hpp"
#include "meandim/tiling.hpp"

using namespace meandim;

TEST_CASE("dyadic tiling construction") {
    TilingScheme s = build_dyadic_tiling(3);
    CHECK(s.folner.depth() == 3);
    CHECK(s.folner.set(2) == FiniteSubset::interval(0, 3));
    CHECK(s.center_set(2, 3) == FiniteSubset({{0, 0}, {4, 0}}));
    CHECK(verify_tiling(s).ok);

    TilingScheme d2 = build_dyadic_tiling(2);
    CHECK(d2.folner.set(1) == FiniteSubset::interval(0, 1));
    CHECK(d2.center_set(1, 2) == FiniteSubset({{0, 0}, {2, 0}}));

    TilingScheme d4 = build_dyadic_tiling(4);
    CHECK(d4.center_set(3, 4) == FiniteSubset({{0, 0}, {8, 0}}));
    CHECK(verify_tiling(d4).ok);
    CHECK_THROWS(build_dyadic_tiling(1));
}

TEST_CASE("corrupted centers are caught with the offending element") {
    TilingScheme s = build_dyadic_tiling(3);
    s.centers[{2, 3}] = FiniteSubset({{0, 0}, {3, 0}});
    TilingCheck c = verify_tiling(s);
    REQUIRE_FALSE(c.ok);
    REQUIRE(c.violation.has_value());
    CHECK(c.violation->n == 3);
    CHECK(c.violation->overlap);
    REQUIRE(c.violation->elements.size() == 1);
    CHECK(c.violation->elements[0] == Element{3, 0});
}

TEST_CASE("gap violations are reported too") {
    TilingScheme s = build_dyadic_tiling(3);
    s.centers[{2, 3}] = FiniteSubset({{0, 0}});  // second translate missing
    TilingCheck c = verify_tiling(s);
    REQUIRE_FALSE(c.ok);
    REQUIRE(c.violation.has_value());
    CHECK(c.violation->n == 3);
    CHECK_FALSE(c.violation->overlap);
    CHECK(c.violation->elements.size() == 4);  // {4..7} uncovered
}

TEST_CASE("2d box tiling verifies") {
    TilingScheme s = build_box_tiling_2d(3);
    CHECK(verify_tiling(s).ok);
    CHECK(s.folner.set(2) == FiniteSubset::box(0, 3, 0, 3));
    CHECK(s.center_set(1, 2).size() == 4);
}

TEST_CASE("tile_decompose") {
    TilingScheme s = build_dyadic_tiling(4);
    std::vector<Tile> t = tile_decompose(s, 3, 2);
    REQUIRE(t.size() == 2);
    CHECK(t[0].k == 2);
    CHECK(t[0].center == Element{0, 0});
    CHECK(t[0].cells == FiniteSubset::interval(0, 3));
    CHECK(t[1].center == Element{4, 0});
    CHECK(t[1].cells == FiniteSubset::interval(4, 7));

    CHECK(tile_decompose(s, 4, 2).size() == 4);

    // partition property, element by element
    FiniteSubset covered;
    for (const Tile& tile : tile_decompose(s, 4, 2)) {
        CHECK(covered.set_intersection(tile.cells).empty());
        covered = covered.set_union(tile.cells);
    }
    CHECK(covered == s.folner.set(4));

    CHECK_THROWS(tile_decompose(s, 2, 2));  // n must exceed the portion

    TilingScheme b = build_box_tiling_2d(3);
    CHECK(tile_decompose(b, 3, 2).size() == 4);  // four sub-boxes
}

TEST_CASE("tempered subsequence of the dyadic scheme") {
    TilingScheme s = build_dyadic_tiling(6);
    TemperedResult r = is_tempered(s.folner.sets, Rational(2), GroupContext(s.family));
    CHECK(r.tempered);
}

TEST_CASE("tiling scheme serialization round trip") {
    TilingScheme s = build_dyadic_tiling(3);
    TilingScheme back = tiling_from_json(tiling_to_json(s));
    CHECK(back.family == s.family);
    CHECK(back.folner.sets.size() == s.folner.sets.size());
    for (std::size_t i = 0; i < s.folner.sets.size(); ++i)
        CHECK(back.folner.sets[i] == s.folner.sets[i]);
    CHECK(back.centers.size() == s.centers.size());
    CHECK(verify_tiling(back).ok);

    TilingScheme grid = build_box_tiling_2d(2);
    TilingScheme gback = tiling_from_json(tiling_to_json(grid));
    CHECK(verify_tiling(gback).ok);
    CHECK(gback.folner.set(2) == grid.folner.set(2));
}
