#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "meandim/group.hpp"
#include "meandim/lp.hpp"

namespace meandim {

/// Symmetric rational distance table with zero diagonal over labelled points.
struct FiniteMetric {
    std::vector<std::string> labels;                // size n; may be empty strings
    std::vector<std::vector<Rational>> dist;        // n x n

    std::size_t size() const { return dist.size(); }
    const Rational& d(std::size_t p, std::size_t q) const { return dist[p][q]; }
    Rational diameter() const;
    /// Symmetry, zero diagonal, positivity off-diagonal, triangle inequality.
    void validate() const;
};

/// Finitely supported probability measure over a metric's point ids.
class DiscreteMeasure {
public:
    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::map<std::size_t, Rational> weights);
    static DiscreteMeasure dirac(std::size_t point);

    const std::map<std::size_t, Rational>& weights() const { return weights_; }
    Rational weight(std::size_t point) const;
    std::vector<std::size_t> support() const;
    Rational total() const;
    /// Weights nonnegative, total exactly 1.
    void validate() const;
    /// Image under a point map; colliding atoms merge.
    DiscreteMeasure pushforward(const std::vector<std::size_t>& image) const;

    bool operator==(const DiscreteMeasure& o) const { return weights_ == o.weights_; }

private:
    std::map<std::size_t, Rational> weights_;  // support only: strictly positive weights
};

struct TransportPlan {
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> moves;  // (from, to, mass)
};

struct TransportResult {
    Rational value;
    TransportPlan plan;
};

/// Exact 1-Wasserstein distance: the primal transportation program over rationals.
TransportResult wasserstein1(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             const FiniteMetric& metric);

/// The dual: max sum f d(mu-nu) over 1-Lipschitz f, as an exact LP.
/// Equals wasserstein1 exactly on every instance.
Rational kr_dual(const DiscreteMeasure& mu, const DiscreteMeasure& nu, const FiniteMetric& metric);

/// Orbit data for a finite acting set F: per g, where each point goes and the
/// exact metric among the images.
struct ActionTable {
    std::vector<Element> acting;                   // sorted
    std::vector<std::vector<std::size_t>> image;   // [g][point id] -> image id
    std::vector<FiniteMetric> image_metric;        // [g]

    std::size_t acting_index(Element g) const;
};

struct DynamicalTransportResult {
    Rational value;
    Element argmax;
};

/// W_F(mu, nu) = max over g in F of W(g mu, g nu); ties keep the smaller g.
DynamicalTransportResult dynamical_wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                               const ActionTable& action);

/// Union of supports.
std::vector<std::size_t> support_union(const std::vector<DiscreteMeasure>& measures);

struct SeparationCheck {
    Rational lhs, rhs;
    bool ok = false;
};

/// W(mu,nu) >= mu(S \ S') * d(S \ S', S') for supports S, S'.
SeparationCheck support_separation_check(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                         const FiniteMetric& metric);

}  // namespace meandim
