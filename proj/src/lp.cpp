#include "meandim/lp.hpp"

#include <stdexcept>

namespace meandim {

LpProblem::Row& LpProblem::add_row(Relation rel, Rational rhs) {
    Row r;
    r.coeffs.assign(num_vars, Rational(0));
    r.rel = rel;
    r.rhs = std::move(rhs);
    rows.push_back(std::move(r));
    return rows.back();
}

namespace {

class SimplexTableau {
public:
    explicit SimplexTableau(const LpProblem& lp) : n_struct_(lp.num_vars) {
        if (lp.objective.size() != lp.num_vars)
            throw std::invalid_argument("solve_lp: objective size mismatch");
        std::size_t m = lp.rows.size();

        // Normalize every row to b >= 0 with relation <= or =.
        std::vector<std::vector<Rational>> a(m);
        std::vector<Rational> b(m);
        std::vector<Relation> rel(m);
        for (std::size_t i = 0; i < m; ++i) {
            if (lp.rows[i].coeffs.size() != lp.num_vars)
                throw std::invalid_argument("solve_lp: row size mismatch");
            a[i] = lp.rows[i].coeffs;
            b[i] = lp.rows[i].rhs;
            rel[i] = lp.rows[i].rel;
            if (rel[i] == Relation::GreaterEq) {
                for (auto& v : a[i]) v = -v;
                b[i] = -b[i];
                rel[i] = Relation::LessEq;
            }
            if (b[i].sign() < 0) {
                for (auto& v : a[i]) v = -v;
                b[i] = -b[i];
                if (rel[i] == Relation::LessEq) rel[i] = Relation::GreaterEq;
            }
        }

        std::size_t n_slack = 0, n_art = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (rel[i] != Relation::Equal) ++n_slack;
            if (rel[i] != Relation::LessEq) ++n_art;
        }
        cols_ = n_struct_ + n_slack + n_art;
        art_begin_ = n_struct_ + n_slack;
        tab_.assign(m, std::vector<Rational>(cols_ + 1, Rational(0)));
        basis_.assign(m, 0);

        std::size_t slack = n_struct_, art = art_begin_;
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n_struct_; ++j) tab_[i][j] = a[i][j];
            tab_[i][cols_] = b[i];
            switch (rel[i]) {
                case Relation::LessEq:
                    tab_[i][slack] = Rational(1);
                    basis_[i] = slack++;
                    break;
                case Relation::GreaterEq:
                    tab_[i][slack++] = Rational(-1);
                    tab_[i][art] = Rational(1);
                    basis_[i] = art++;
                    break;
                case Relation::Equal:
                    tab_[i][art] = Rational(1);
                    basis_[i] = art++;
                    break;
            }
        }
        cost_.assign(cols_, Rational(0));
        for (std::size_t j = 0; j < n_struct_; ++j) cost_[j] = lp.objective[j];
    }

    LpSolution run() {
        LpSolution sol;
        if (art_begin_ < cols_) {
            std::vector<Rational> phase1(cols_, Rational(0));
            for (std::size_t j = art_begin_; j < cols_; ++j) phase1[j] = Rational(1);
            bool bounded = optimize(phase1);
            if (!bounded) throw std::logic_error("solve_lp: phase 1 cannot be unbounded");
            if (objective_value(phase1).sign() > 0) {
                sol.status = LpStatus::Infeasible;
                return sol;
            }
            expel_artificials();
        }
        if (!optimize(cost_)) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        sol.status = LpStatus::Optimal;
        sol.x.assign(n_struct_, Rational(0));
        for (std::size_t i = 0; i < tab_.size(); ++i)
            if (basis_[i] < n_struct_) sol.x[basis_[i]] = tab_[i][cols_];
        sol.objective = Rational(0);
        for (std::size_t j = 0; j < n_struct_; ++j)
            if (!sol.x[j].is_zero()) sol.objective += cost_[j] * sol.x[j];
        return sol;
    }

private:
    std::size_t n_struct_, cols_ = 0, art_begin_ = 0;
    std::vector<std::vector<Rational>> tab_;  // m x (cols_+1), rhs last
    std::vector<std::size_t> basis_;
    std::vector<Rational> cost_;
    bool bland_ = false;

    Rational objective_value(const std::vector<Rational>& cost) const {
        Rational v(0);
        for (std::size_t i = 0; i < tab_.size(); ++i)
            if (!cost[basis_[i]].is_zero()) v += cost[basis_[i]] * tab_[i][cols_];
        return v;
    }

    // c_j - c_B . T_j for every column; recomputed per iteration (exact anyway).
    std::vector<Rational> reduced_costs(const std::vector<Rational>& cost) const {
        std::vector<Rational> red = cost;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            const Rational& cb = cost[basis_[i]];
            if (cb.is_zero()) continue;
            for (std::size_t j = 0; j < cols_; ++j)
                if (!tab_[i][j].is_zero()) red[j] -= cb * tab_[i][j];
        }
        return red;
    }

    void pivot(std::size_t row, std::size_t col) {
        Rational p = tab_[row][col];
        for (auto& v : tab_[row]) v /= p;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (i == row || tab_[i][col].is_zero()) continue;
            Rational f = tab_[i][col];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (!tab_[row][j].is_zero()) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    // Minimizes cost; artificial columns never re-enter the basis.
    // Returns false when unbounded.
    bool optimize(const std::vector<Rational>& cost) {
        std::size_t stall = 0;
        Rational last_value = objective_value(cost);
        // the reduced-cost row rides along with the pivots
        std::vector<Rational> red = reduced_costs(cost);
        for (std::size_t iter = 0;; ++iter) {
            if (iter > 2000000) throw std::runtime_error("solve_lp: pivot limit exceeded");
            std::size_t enter = cols_;
            if (bland_) {
                for (std::size_t j = 0; j < art_begin_; ++j)
                    if (red[j].sign() < 0) {
                        enter = j;
                        break;
                    }
            } else {
                Rational best(0);
                for (std::size_t j = 0; j < art_begin_; ++j)
                    if (red[j] < best) {
                        best = red[j];
                        enter = j;
                    }
            }
            if (enter == cols_) return true;

            std::size_t leave = tab_.size();
            Rational best_ratio;
            for (std::size_t i = 0; i < tab_.size(); ++i) {
                if (tab_[i][enter].sign() <= 0) continue;
                Rational ratio = tab_[i][cols_] / tab_[i][enter];
                if (leave == tab_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    best_ratio = ratio;
                    leave = i;
                }
            }
            if (leave == tab_.size()) return false;
            pivot(leave, enter);
            // update the reduced costs against the normalized pivot row
            Rational factor = red[enter];
            if (!factor.is_zero()) {
                for (std::size_t j = 0; j < cols_; ++j)
                    if (!tab_[leave][j].is_zero()) red[j] -= factor * tab_[leave][j];
                red[enter] = Rational(0);
            }

            Rational value = objective_value(cost);
            if (value == last_value) {
                if (++stall > 40) bland_ = true;
            } else {
                stall = 0;
                last_value = value;
            }
        }
    }

    // After phase 1: pivot basic artificials onto real columns where possible.
    // Rows with no eligible nonzero entry are redundant and stay inert.
    void expel_artificials() {
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (basis_[i] < art_begin_) continue;
            for (std::size_t j = 0; j < art_begin_; ++j)
                if (!tab_[i][j].is_zero()) {
                    pivot(i, j);
                    break;
                }
        }
    }
};

}  // namespace

LpSolution solve_lp(const LpProblem& lp) {
    SimplexTableau t(lp);
    return t.run();
}

}  // namespace meandim
