#include "meandim/transport.hpp"

#include <algorithm>
#include <stdexcept>

namespace meandim {

Rational FiniteMetric::diameter() const {
    Rational m(0);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) m = max(m, dist[i][j]);
    return m;
}

void FiniteMetric::validate() const {
    std::size_t n = size();
    if (!labels.empty() && labels.size() != n)
        throw std::invalid_argument("FiniteMetric: label count mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (dist[i].size() != n) throw std::invalid_argument("FiniteMetric: table not square");
        if (!dist[i][i].is_zero()) throw std::invalid_argument("FiniteMetric: nonzero diagonal");
        for (std::size_t j = 0; j < n; ++j) {
            if (dist[i][j] != dist[j][i]) throw std::invalid_argument("FiniteMetric: not symmetric");
            if (i != j && dist[i][j].sign() <= 0)
                throw std::invalid_argument("FiniteMetric: distinct points at distance <= 0");
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (dist[i][j] > dist[i][k] + dist[k][j])
                    throw std::invalid_argument("FiniteMetric: triangle inequality fails");
}

DiscreteMeasure::DiscreteMeasure(std::map<std::size_t, Rational> weights) {
    for (auto& [p, w] : weights) {
        if (w.sign() < 0) throw std::invalid_argument("DiscreteMeasure: negative weight");
        if (w.sign() > 0) weights_.emplace(p, w);
    }
}

DiscreteMeasure DiscreteMeasure::dirac(std::size_t point) {
    DiscreteMeasure m;
    m.weights_.emplace(point, Rational(1));
    return m;
}

Rational DiscreteMeasure::weight(std::size_t point) const {
    auto it = weights_.find(point);
    return it == weights_.end() ? Rational(0) : it->second;
}

std::vector<std::size_t> DiscreteMeasure::support() const {
    std::vector<std::size_t> s;
    s.reserve(weights_.size());
    for (const auto& [p, w] : weights_) s.push_back(p);
    return s;
}

Rational DiscreteMeasure::total() const {
    Rational t(0);
    for (const auto& [p, w] : weights_) t += w;
    return t;
}

void DiscreteMeasure::validate() const {
    if (total() != Rational(1)) throw std::invalid_argument("DiscreteMeasure: weights must sum to 1");
}

DiscreteMeasure DiscreteMeasure::pushforward(const std::vector<std::size_t>& image) const {
    std::map<std::size_t, Rational> w;
    for (const auto& [p, m] : weights_) {
        if (p >= image.size()) throw std::out_of_range("pushforward: point outside image table");
        auto [it, inserted] = w.emplace(image[p], m);
        if (!inserted) it->second += m;
    }
    return DiscreteMeasure(std::move(w));
}

TransportResult wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const FiniteMetric& metric) {
    mu.validate();
    nu.validate();
    std::vector<std::size_t> sp = mu.support(), sq = nu.support();
    for (std::size_t p : sp)
        if (p >= metric.size()) throw std::out_of_range("wasserstein1: mu support outside metric");
    for (std::size_t q : sq)
        if (q >= metric.size()) throw std::out_of_range("wasserstein1: nu support outside metric");

    LpProblem lp;
    lp.num_vars = sp.size() * sq.size();
    lp.objective.resize(lp.num_vars);
    auto var = [&](std::size_t i, std::size_t j) { return i * sq.size() + j; };
    for (std::size_t i = 0; i < sp.size(); ++i)
        for (std::size_t j = 0; j < sq.size(); ++j) lp.objective[var(i, j)] = metric.d(sp[i], sq[j]);
    for (std::size_t i = 0; i < sp.size(); ++i) {
        auto& row = lp.add_row(Relation::Equal, mu.weight(sp[i]));
        for (std::size_t j = 0; j < sq.size(); ++j) row.coeffs[var(i, j)] = Rational(1);
    }
    for (std::size_t j = 0; j < sq.size(); ++j) {
        auto& row = lp.add_row(Relation::Equal, nu.weight(sq[j]));
        for (std::size_t i = 0; i < sp.size(); ++i) row.coeffs[var(i, j)] = Rational(1);
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("wasserstein1: transportation program not optimal");

    TransportResult res;
    res.value = sol.objective;
    for (std::size_t i = 0; i < sp.size(); ++i)
        for (std::size_t j = 0; j < sq.size(); ++j)
            if (!sol.x[var(i, j)].is_zero())
                res.plan.moves.emplace_back(sp[i], sq[j], sol.x[var(i, j)]);
    return res;
}

Rational kr_dual(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const FiniteMetric& metric) {
    mu.validate();
    nu.validate();
    std::vector<DiscreteMeasure> both{mu, nu};
    std::vector<std::size_t> pts = support_union(both);
    std::size_t n = pts.size();
    if (n == 0) return Rational(0);

    // f = u - v with u, v >= 0; f(pts[0]) pinned to 0 (objective is
    // shift-invariant since the weight differences sum to zero).
    LpProblem lp;
    lp.num_vars = 2 * n;
    lp.objective.assign(lp.num_vars, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        Rational c = mu.weight(pts[i]) - nu.weight(pts[i]);
        lp.objective[i] = -c;      // maximize -> minimize negation
        lp.objective[n + i] = c;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            auto& row = lp.add_row(Relation::LessEq, metric.d(pts[i], pts[j]));
            row.coeffs[i] = Rational(1);
            row.coeffs[n + i] = Rational(-1);
            row.coeffs[j] = Rational(-1);
            row.coeffs[n + j] = Rational(1);
        }
    }
    {
        auto& pin = lp.add_row(Relation::Equal, Rational(0));
        pin.coeffs[0] = Rational(1);
        pin.coeffs[n] = Rational(-1);
    }
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) throw std::runtime_error("kr_dual: LP not optimal");
    return -sol.objective;
}

std::size_t ActionTable::acting_index(Element g) const {
    for (std::size_t i = 0; i < acting.size(); ++i)
        if (acting[i] == g) return i;
    throw std::out_of_range("ActionTable: element not in acting set");
}

DynamicalTransportResult dynamical_wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                               const ActionTable& action) {
    if (action.acting.empty()) throw std::invalid_argument("dynamical_wasserstein: empty acting set");
    if (action.image.size() != action.acting.size() || action.image_metric.size() != action.acting.size())
        throw std::invalid_argument("dynamical_wasserstein: ragged action table");
    DynamicalTransportResult res;
    bool first = true;
    for (std::size_t gi = 0; gi < action.acting.size(); ++gi) {
        DiscreteMeasure gm = mu.pushforward(action.image[gi]);
        DiscreteMeasure gn = nu.pushforward(action.image[gi]);
        Rational w = wasserstein1(gm, gn, action.image_metric[gi]).value;
        if (first || w > res.value) {
            res.value = w;
            res.argmax = action.acting[gi];
            first = false;
        }
    }
    return res;
}

std::vector<std::size_t> support_union(const std::vector<DiscreteMeasure>& measures) {
    std::vector<std::size_t> pts;
    for (const auto& m : measures)
        for (const auto& [p, w] : m.weights()) pts.push_back(p);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

SeparationCheck support_separation_check(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                         const FiniteMetric& metric) {
    SeparationCheck res;
    res.lhs = wasserstein1(mu, nu, metric).value;
    std::vector<std::size_t> s = mu.support(), sp = nu.support();
    std::vector<std::size_t> diff;
    std::set_difference(s.begin(), s.end(), sp.begin(), sp.end(), std::back_inserter(diff));
    if (diff.empty()) {
        res.rhs = Rational(0);
    } else {
        Rational mass(0);
        for (std::size_t p : diff) mass += mu.weight(p);
        bool first = true;
        Rational dmin(0);
        for (std::size_t p : diff)
            for (std::size_t q : sp) {
                if (first || metric.d(p, q) < dmin) dmin = metric.d(p, q);
                first = false;
            }
        res.rhs = mass * dmin;
    }
    res.ok = res.lhs >= res.rhs;
    return res;
}

}  // namespace meandim
