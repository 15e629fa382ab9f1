#pragma once

#include <map>
#include <optional>
#include <vector>

#include "meandim/group.hpp"

namespace meandim {

/// Folner sequence broken into portions: boundaries 0 = n_0 < n_1 < n_2 < ...
/// Portion p (1-based) is {F_{n_{p-1}+1}, ..., F_{n_p}}.
struct FolnerData {
    std::vector<FiniteSubset> sets;          // F_1, F_2, ... (1-based externally)
    std::vector<std::size_t> boundaries;     // starts with 0, strictly increasing

    const FiniteSubset& set(std::size_t n) const { return sets.at(n - 1); }
    std::size_t depth() const { return sets.size(); }
    std::size_t portion_count() const { return boundaries.size() - 1; }
    /// Tile indices of portion p: (n_{p-1}, n_p].
    std::pair<std::size_t, std::size_t> portion_range(std::size_t p) const;
};

/// Folner portions plus center sets C_{k,n} realizing the exact tilings
/// F_n = disjoint union of F_k c over k in a portion, c in C_{k,n}.
struct TilingScheme {
    GroupFamily family = GroupFamily::IntegerLine;
    FolnerData folner;
    std::map<std::pair<std::size_t, std::size_t>, FiniteSubset> centers;  // (k,n) -> C_{k,n}

    bool has_centers(std::size_t k, std::size_t n) const { return centers.count({k, n}) > 0; }
    const FiniteSubset& center_set(std::size_t k, std::size_t n) const;
};

/// F_k = {0..2^k-1}, singleton portions, C_{k,n} = 2^k * {0..2^{n-k}-1}.
TilingScheme build_dyadic_tiling(std::size_t depth);

/// Z^2 analogue: F_k = {0..2^k-1}^2, C_{k,n} = 2^k * {0..2^{n-k}-1}^2.
TilingScheme build_box_tiling_2d(std::size_t depth);

struct TilingViolation {
    std::size_t n = 0;
    std::vector<Element> elements;  // overlapping or missing elements
    bool overlap = false;           // false: gap / stray translate
};

struct TilingCheck {
    bool ok = true;
    std::optional<TilingViolation> violation;
};

/// Checks the partition property for every (portion, n) pair with stored centers.
TilingCheck verify_tiling(const TilingScheme& scheme);

struct Tile {
    std::size_t k = 0;   // tile index: uses F_k
    Element center;      // c
    FiniteSubset cells;  // F_k * c
};

/// Decomposes F_n into right-translates of the given portion's tiles.
/// Requires n past the portion and stored center data; verifies the partition.
std::vector<Tile> tile_decompose(const TilingScheme& scheme, std::size_t n, std::size_t portion);

}  // namespace meandim
