#pragma once

#include <optional>

#include "meandim/independence.hpp"
#include "meandim/simplex.hpp"
#include "meandim/tiling.hpp"
#include "meandim/transport.hpp"

namespace meandim {

/// One slot of the index set M: a tile (j, c) together with the witness
/// positions J ∩ F_j c it carries. The slot's simplex has 2^{positions} vertices.
struct IndexSlot {
    std::size_t tile_index = 0;           // which F_j shapes the tile
    Element center;                       // c
    std::vector<std::size_t> positions;   // indexes into sorted J (ascending)

    std::size_t k() const { return std::size_t{1} << positions.size(); }
};

struct IndexM {
    std::vector<IndexSlot> slots;

    /// Positions partition {0..j_size-1}; the product of the k's is 2^j_size.
    void validate(std::size_t j_size) const;
};

/// Blocks J ∩ (tile cells), tile order preserved, empty blocks retained.
/// Requires the tiles to partition a superset of J.
std::vector<std::vector<Element>> restrict_tiling(const std::vector<Element>& j_sorted,
                                                  const std::vector<Tile>& tiles);

/// Tile indexes whose block reaches (delta/2)|F_j| witnesses.
std::vector<std::size_t> select_dense_tiles(const std::vector<std::vector<Element>>& blocks,
                                            const Rational& delta,
                                            const std::vector<std::size_t>& tile_sizes);

/// Margin making orbit distances across the portion exceed the cylinder gap:
/// d(x,y) below the margin forces d(gx,gy) < d(U0,U1) for every g in the
/// portion's sets. For the shift metric this is d(U0,U1) * 2^-R with R the
/// largest word length in the portion.
Rational orbit_separation_margin(const GroupContext& ctx,
                                 const std::vector<FiniteSubset>& portion_sets,
                                 const Rational& cylinder_gap);

/// gamma^2 / diam * (max_j 2^{|F_j|+1})^{-1}: covers at most this fine in
/// W_{F_n}-diameter are separating.
Rational separating_diameter_bound(const Rational& gamma, const Rational& diam,
                                   const std::vector<std::size_t>& portion_tile_sizes);

/// The multi-affine coordinates of the big simplex: out[code] is the product
/// over slots of the slot coordinate at that code's digit. Witness codes read
/// J's first element as the most significant bit.
std::vector<Rational> tensor_embed(const IndexM& index, std::size_t j_size,
                                   const std::vector<std::vector<Rational>>& t);

std::size_t slot_digit(const IndexSlot& slot, std::size_t code, std::size_t j_size);

/// The exact L_n instance: witnesses, their metric, and the orbit data.
struct LnInstance {
    SubshiftSpec shift;
    GroupContext group{GroupFamily::IntegerLine};
    FiniteSubset f_n;
    std::vector<Element> j;                // sorted
    IndexM index;
    std::vector<Configuration> witnesses;  // 2^{|J|}, by code
    FiniteMetric metric;                   // exact pairwise distances
    ActionTable action;                    // over F_n
    Rational delta;                        // |J| / |F_n|
    Rational diam;                         // diameter of the ambient subshift
    Rational gamma;                        // orbit-separation margin
    Rational epsilon;                      // separating diameter bound

    std::size_t witness_count() const { return witnesses.size(); }
    /// Witness ids whose slot digit lies in the face mask: S of the face's image.
    std::vector<std::size_t> slot_face_support(std::size_t slot, std::uint32_t face_mask) const;
};

/// Builds every witness for the given J (throws above the cap: 2^{|J|} growth).
LnInstance build_ln_instance(const SubshiftSpec& spec, const TilingScheme& scheme,
                             std::size_t portion, std::size_t n, const std::vector<Element>& j,
                             const Cylinder& u0, const Cylinder& u1, std::size_t max_j = 4);

/// Measure with weights from the multi-affine coordinates of t.
DiscreteMeasure measure_embed(const LnInstance& instance,
                              const std::vector<std::vector<Rational>>& t);

struct MeasureDecomposition {
    Rational lambda;                       // mass of the face side
    std::optional<DiscreteMeasure> face_part;       // in the face's image
    std::optional<DiscreteMeasure> opposite_part;   // in the opposite face's image
};

/// mu = lambda * face_part + (1-lambda) * opposite_part, exactly; a degenerate
/// side (lambda 0 or 1) is left unset.
MeasureDecomposition decompose_measure(const LnInstance& instance,
                                       const std::vector<std::vector<Rational>>& t,
                                       std::size_t slot, std::uint32_t face_mask);

/// min over measures nu supported on the allowed points of max_g W(g mu, g nu),
/// one exact LP (epigraph over the per-g transport programs). Underestimates
/// the distance to the face's image, so lower-bound checks stay conservative.
Rational lp_face_distance(const LnInstance& instance, const DiscreteMeasure& mu,
                          const std::vector<std::size_t>& allowed_support);

struct FaceDistanceCheck {
    Rational beta;                 // mass on the opposite side
    bool ub_applicable = false;    // false when beta = 1 (no face-side part)
    Rational ub_value, ub_bound;   // W_{F_n}(mu, face-side part) <= beta * diam
    Rational lb_value, lb_bound;   // LP distance to the face >= beta * gamma
    bool ok = false;
};

/// The distance sandwich around an embedded face: upper bound through the
/// decomposition witness, lower bound through the relaxed LP.
FaceDistanceCheck face_distance_bounds_check(const LnInstance& instance,
                                             const std::vector<std::vector<Rational>>& t,
                                             std::size_t slot, std::uint32_t face_mask);

struct FaceFamilyCheck {
    bool applicable = false;  // preconditions met: near every face, intersection nonempty
    Rational value, bound;
    bool ok = true;
};

/// If mu is epsilon-close (in the LP sense) to every face of the family and the
/// family intersects, mu is (diam * k_m * epsilon / gamma)-close to the intersection.
FaceFamilyCheck face_family_intersection_check(const LnInstance& instance,
                                               const std::vector<std::vector<Rational>>& t,
                                               std::size_t slot,
                                               const std::vector<std::uint32_t>& face_masks,
                                               const Rational& epsilon);

struct TileCountCheck {
    Rational lhs, rhs;
    bool ok = false;
};

/// |F_n| <= (2/delta) * sum |F_j| * |C_j^{(n)}| over the dense tiles.
/// Rejects witnesses below the declared density (|J| >= delta |F_n| required).
TileCountCheck tile_count_estimate_check(std::size_t f_n_size, std::size_t j_size,
                                         const Rational& delta,
                                         const std::vector<std::pair<std::size_t, std::size_t>>&
                                             tile_size_and_dense_count);

/// sum_j 2^{floor((delta/2)|F_j|)} * |C_j^{(n)}|.
BigInt dim_lower_bound(const Rational& delta,
                       const std::vector<std::pair<std::size_t, std::size_t>>& tile_size_and_dense_count);

/// (delta/2) * min_j 2^{floor((delta/2)|F_j|)} / |F_j|.
Rational mdim_lower_bound(const Rational& delta, const std::vector<std::size_t>& portion_tile_sizes);

struct BallProbeViolation {
    std::size_t slot = 0;
    std::vector<std::size_t> balls;
    std::vector<std::uint32_t> face_masks;
    std::size_t sample = 0;  // the sample sitting on the forbidden opposite face
};

struct BallProbeReport {
    Rational max_ball_diameter;  // exact W_{F_n} diameter over the samples
    std::vector<BallProbeViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Sample-level separating probe for a cover of L_n by W_{F_n}-balls: face
/// incidences are read off the preimages; a violation is a genuine
/// counterexample, a clean report is sample-level only.
BallProbeReport ball_cover_separating_probe(const LnInstance& instance,
                                            const std::vector<std::vector<std::vector<Rational>>>& samples,
                                            const std::vector<std::vector<std::size_t>>& balls);

/// One row of the bound report: the finite data of the estimate chain.
struct BoundRow {
    std::size_t portion = 0, n = 0;
    std::size_t f_n_size = 0, j_size = 0;
    Rational delta, gamma, epsilon;
    std::size_t tile_count = 0, dense_tile_count = 0;
    BigInt dim_bound;
    Rational mdim_bound;
};

/// Computes the row for (portion, n) from a witness J with density delta.
BoundRow compute_bound_row(const SubshiftSpec& spec, const TilingScheme& scheme, std::size_t portion,
                           std::size_t n, const std::vector<Element>& j, const Rational& delta);

/// Space diameter of the subshift (1 whenever two symbols can occupy the
/// identity coordinate).
Rational subshift_diameter(const SubshiftSpec& spec);

}  // namespace meandim
