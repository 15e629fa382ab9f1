#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <optional>

#include "meandim/io.hpp"
#include "meandim/lp.hpp"

using namespace meandim;

namespace {

// Brute-force oracle: enumerate all vertices of the polytope (every subset of
// tight constraints of full rank), keep the feasible ones, minimize. Gaussian
// elimination over exact rationals, fully independent of the simplex engine.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
    std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;  // singular
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// The oracle expects every row as <= and the variables bounded, so the
// feasible set is a polytope whose vertices carry the optimum.
std::optional<Rational> vertex_enumeration_min(const LpProblem& lp) {
    std::size_t n = lp.num_vars;
    // constraint list: rows plus the nonnegativity bounds
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (const auto& r : lp.rows) {
        rows.push_back(r.coeffs);
        rhs.push_back(r.rhs);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> e(n, Rational(0));
        e[j] = Rational(-1);  // -x_j <= 0
        rows.push_back(std::move(e));
        rhs.push_back(Rational(0));
    }
    std::size_t m = rows.size();
    std::optional<Rational> best;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (pick.size() == n) {
            std::vector<std::vector<Rational>> a;
            std::vector<Rational> b;
            for (std::size_t i : pick) {
                a.push_back(rows[i]);
                b.push_back(rhs[i]);
            }
            auto x = solve_square(a, b);
            if (!x) return;
            for (std::size_t i = 0; i < m; ++i) {
                Rational lhs(0);
                for (std::size_t j = 0; j < n; ++j) lhs += rows[i][j] * (*x)[j];
                if (lhs > rhs[i]) return;  // infeasible vertex
            }
            Rational value(0);
            for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * (*x)[j];
            if (!best || value < *best) best = value;
            return;
        }
        for (std::size_t i = from; i < m; ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return best;
}

}  // namespace

TEST_CASE("simple bounded minimum") {
    // min x + y  st  x + y >= 3, x <= 2
    LpProblem lp;
    lp.num_vars = 2;
    lp.objective = {Rational(1), Rational(1)};
    lp.add_row(Relation::GreaterEq, Rational(3)).coeffs = {Rational(1), Rational(1)};
    lp.add_row(Relation::LessEq, Rational(2)).coeffs = {Rational(1), Rational(0)};
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Rational(3));
}

TEST_CASE("equality constraints") {
    // min 2x + 3y  st  x + y = 4, x - y = 0
    LpProblem lp;
    lp.num_vars = 2;
    lp.objective = {Rational(2), Rational(3)};
    lp.add_row(Relation::Equal, Rational(4)).coeffs = {Rational(1), Rational(1)};
    lp.add_row(Relation::Equal, Rational(0)).coeffs = {Rational(1), Rational(-1)};
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == Rational(2));
    CHECK(s.x[1] == Rational(2));
    CHECK(s.objective == Rational(10));
}

TEST_CASE("infeasible") {
    LpProblem lp;
    lp.num_vars = 1;
    lp.objective = {Rational(1)};
    lp.add_row(Relation::LessEq, Rational(1)).coeffs = {Rational(1)};
    lp.add_row(Relation::GreaterEq, Rational(2)).coeffs = {Rational(1)};
    CHECK(solve_lp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("unbounded") {
    LpProblem lp;
    lp.num_vars = 1;
    lp.objective = {Rational(-1)};
    lp.add_row(Relation::GreaterEq, Rational(0)).coeffs = {Rational(1)};
    CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("redundant equalities are tolerated") {
    // the second equality is the first doubled
    LpProblem lp;
    lp.num_vars = 2;
    lp.objective = {Rational(1), Rational(2)};
    lp.add_row(Relation::Equal, Rational(2)).coeffs = {Rational(1), Rational(1)};
    lp.add_row(Relation::Equal, Rational(4)).coeffs = {Rational(2), Rational(2)};
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Rational(2));
}

TEST_CASE("degenerate vertex does not cycle") {
    // classic degeneracy: several constraints through the origin
    LpProblem lp;
    lp.num_vars = 3;
    lp.objective = {Rational(-3, 4), Rational(150), Rational(-1, 50)};
    {
        auto& r = lp.add_row(Relation::LessEq, Rational(0));
        r.coeffs = {Rational(1, 4), Rational(-60), Rational(-1, 25)};
    }
    {
        auto& r = lp.add_row(Relation::LessEq, Rational(0));
        r.coeffs = {Rational(1, 2), Rational(-90), Rational(-1, 50)};
    }
    {
        auto& r = lp.add_row(Relation::LessEq, Rational(1));
        r.coeffs = {Rational(0), Rational(0), Rational(1)};
    }
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == Rational(-1, 20));  // x = (1/25, 0, 1)
}

TEST_CASE("random small programs agree with vertex enumeration") {
    Prng rng(101);
    int solved = 0;
    for (int iter = 0; iter < 120; ++iter) {
        std::size_t n = 2 + rng.below(2);
        LpProblem lp;
        lp.num_vars = n;
        for (std::size_t j = 0; j < n; ++j)
            lp.objective.push_back(Rational(static_cast<long long>(rng.below(9)) - 4));
        std::size_t m = 1 + rng.below(3);
        for (std::size_t i = 0; i < m; ++i) {
            auto& row = lp.add_row(Relation::LessEq, Rational(static_cast<long long>(rng.below(7))));
            for (std::size_t j = 0; j < n; ++j)
                row.coeffs[j] = Rational(static_cast<long long>(rng.below(7)) - 3);
        }
        // box bounds keep the region a polytope and the program bounded
        for (std::size_t j = 0; j < n; ++j) {
            auto& row = lp.add_row(Relation::LessEq, Rational(5));
            row.coeffs[j] = Rational(1);
        }
        LpSolution s = solve_lp(lp);
        auto oracle = vertex_enumeration_min(lp);
        REQUIRE(s.status == LpStatus::Optimal);  // the origin is always feasible
        REQUIRE(oracle.has_value());
        CHECK(s.objective == *oracle);
        ++solved;
    }
    CHECK(solved == 120);
}

TEST_CASE("random equality-form programs agree with vertex enumeration") {
    // equalities expressed as two inequalities for the oracle
    Prng rng(202);
    for (int iter = 0; iter < 60; ++iter) {
        std::size_t n = 2 + rng.below(2);
        std::vector<Rational> cost;
        for (std::size_t j = 0; j < n; ++j)
            cost.push_back(Rational(static_cast<long long>(rng.below(9)) - 4));
        std::vector<Rational> coeffs;
        for (std::size_t j = 0; j < n; ++j)
            coeffs.push_back(Rational(static_cast<long long>(1 + rng.below(4))));
        Rational rhs(static_cast<long long>(2 + rng.below(6)));

        LpProblem eq;
        eq.num_vars = n;
        eq.objective = cost;
        eq.add_row(Relation::Equal, rhs).coeffs = coeffs;
        for (std::size_t j = 0; j < n; ++j) {
            auto& row = eq.add_row(Relation::LessEq, Rational(8));
            row.coeffs[j] = Rational(1);
        }
        LpSolution s = solve_lp(eq);

        LpProblem both;
        both.num_vars = n;
        both.objective = cost;
        both.add_row(Relation::LessEq, rhs).coeffs = coeffs;
        {
            auto& row = both.add_row(Relation::LessEq, -rhs);
            for (std::size_t j = 0; j < n; ++j) row.coeffs[j] = -coeffs[j];
        }
        for (std::size_t j = 0; j < n; ++j) {
            auto& row = both.add_row(Relation::LessEq, Rational(8));
            row.coeffs[j] = Rational(1);
        }
        auto oracle = vertex_enumeration_min(both);
        if (s.status == LpStatus::Optimal) {
            REQUIRE(oracle.has_value());
            CHECK(s.objective == *oracle);
        } else {
            CHECK_FALSE(oracle.has_value());
        }
    }
}

TEST_CASE("exact rational pivots keep exact answers") {
    // min sum x_i st x_i >= 1/3^i; optimum is the geometric sum
    LpProblem lp;
    lp.num_vars = 6;
    lp.objective.assign(6, Rational(1));
    Rational expected(0);
    Rational p(1);
    for (std::size_t i = 0; i < 6; ++i) {
        p /= Rational(3);
        auto& r = lp.add_row(Relation::GreaterEq, p);
        r.coeffs.assign(6, Rational(0));
        r.coeffs[i] = Rational(1);
        expected += p;
    }
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == expected);
}
