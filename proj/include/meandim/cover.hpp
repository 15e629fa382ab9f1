#pragma once

#include <array>
#include <optional>
#include <vector>

#include "meandim/simplex.hpp"

namespace meandim {

/// Cell grid on a simplex product at resolution r. Cells of one factor are the
/// full-dimensional pieces cut by the coordinate grid: integer vectors s with
/// 0 <= s_j <= r-1 and r-k+1 <= sum s_j <= r-1, standing for the closed box
/// prod [s_j, s_j+1] / r intersected with the simplex.
struct GridGeometry {
    ProductSpec spec;
    int resolution = 1;
    std::vector<std::vector<std::vector<int>>> factor_cells;     // [factor][cell] -> s
    std::vector<std::vector<std::vector<int>>> factor_vertices;  // [factor][vertex] -> v, sum = r

    static GridGeometry make(const ProductSpec& spec, int resolution);

    std::size_t product_cell_count() const;
    /// Mixed-radix encoding, first factor most significant.
    std::size_t encode_cell(const std::vector<std::size_t>& per_factor) const;
    std::vector<std::size_t> decode_cell(std::size_t id) const;
};

/// Closed axis box in 1/r units: per factor, per coordinate [lo, hi].
struct GridBox {
    std::vector<std::vector<std::array<int, 2>>> range;
};

/// Cover element: a union of closed grid cells, with one box per cell.
struct CoverElement {
    std::vector<std::size_t> cells;  // sorted product-cell ids
    std::vector<GridBox> boxes;
};

/// Combinatorial stand-in for a finite open cover: closed cell unions whose
/// vertex incidences play the role of open overlaps.
struct GridCover {
    GridGeometry geom;
    std::vector<CoverElement> elements;
    // incidence[e][factor]: bit j set when element e meets the (k-1)-face
    // of that factor missing coordinate j.
    std::vector<std::vector<std::uint32_t>> incidence;

    /// Builds from per-element cell-id lists; checks every cell is covered.
    static GridCover from_cells(const ProductSpec& spec, int resolution,
                                const std::vector<std::vector<std::size_t>>& element_cells);
};

/// max over grid vertices of (number of containing elements) - 1.
int cover_order(const GridCover& cover);

struct CounterFamily {
    std::size_t factor = 0;
    std::vector<std::size_t> elements;
    std::vector<std::uint32_t> face_masks;  // per element, a (k-1)-face it meets
};

struct SeparatingCheck {
    bool separating = true;
    std::optional<CounterFamily> counterexample;
};

/// For every factor and every subfamily of distinct elements paired with
/// incident (k_i-1)-faces whose intersection is a face: the subfamily's
/// intersection must avoid the embedded opposite face.
SeparatingCheck is_separating(const GridCover& cover);

/// Per element: the center in factors clear of (k_i-1)-faces, else the vertex
/// opposite the lexicographically smallest incident face.
std::vector<ProductPoint> phi_alpha(const GridCover& cover);

/// g(x) = sum_U phi(U) f_U(x) with f_U the distance-to-complement partition of
/// unity (membership indicators where all distances vanish).
ProductPoint g_map(const GridCover& cover, const ProductPoint& x);

struct BoundaryCheckReport {
    std::size_t samples = 0;
    std::vector<std::pair<ProductPoint, ProductPoint>> violations;  // (x, g(x))
    bool ok() const { return violations.empty(); }
};

/// For a separating cover: every boundary sample must satisfy
/// g(x) on the boundary and g(x) != x. Refuses non-separating covers
/// and samples off the boundary.
BoundaryCheckReport boundary_displacement_check(const GridCover& cover,
                                                const std::vector<ProductPoint>& samples);

struct CoverSearchBudget {
    std::size_t max_elements = 6;
    int resolution = 3;
    std::size_t max_candidate_elements = 256;
};

struct MinSeparatingResult {
    bool found = false;
    int min_order = -1;
    GridCover witness;
    std::size_t covers_enumerated = 0;
    int dim_bound = 0;           // sum (k_i - 1), always asserted safe
    int strong_bound = 0;        // sum k_i, recorded only
    bool strong_bound_met = false;
};

/// Exhaustive search over box-element covers (products of contiguous cell
/// ranges, deduplicated as sets, <= max_elements) for the smallest order among
/// separating covers.
MinSeparatingResult min_separating_order(const ProductSpec& spec, const CoverSearchBudget& budget);

struct RefinementResult {
    int order = 0;
    bool exact = true;  // false: enumeration truncated, value is an upper bound
};

/// Minimal order over box-element covers finer than `cover`, at resolutions
/// that are multiples of the cover's, within the budget. Seeded with the cover
/// itself, so the result never exceeds cover_order(cover).
RefinementResult min_order_refinement(const GridCover& cover, const CoverSearchBudget& budget);

}  // namespace meandim
