#pragma once

#include <vector>

#include "meandim/rational.hpp"

namespace meandim {

enum class Relation { LessEq, Equal, GreaterEq };

/// min c.x subject to the rows, x >= 0. Callers split free variables.
struct LpProblem {
    struct Row {
        std::vector<Rational> coeffs;
        Relation rel = Relation::Equal;
        Rational rhs;
    };
    std::size_t num_vars = 0;
    std::vector<Rational> objective;
    std::vector<Row> rows;

    Row& add_row(Relation rel, Rational rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational objective;
    std::vector<Rational> x;
};

/// Two-phase dense simplex over exact rationals. Dantzig pricing with a
/// permanent switch to Bland's rule once degeneracy stalls, so it terminates.
LpSolution solve_lp(const LpProblem& lp);

}  // namespace meandim
