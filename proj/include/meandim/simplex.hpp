#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "meandim/rational.hpp"

namespace meandim {

/// A product of standard simplexes Delta_{k_1} x ... x Delta_{k_n}.
struct ProductSpec {
    std::vector<int> k;  // each >= 2

    void validate() const;
    std::size_t factors() const { return k.size(); }
    /// sum (k_i - 1)
    int dimension() const;
    /// sum k_i
    int strong_order_bound() const;
};

/// A face of one simplex factor: the points supported on index_mask.
/// |mask| = ell identifies an ell-face; the opposite face is the complement.
struct FaceRef {
    std::size_t simplex = 0;
    std::uint32_t index_mask = 0;  // nonempty subset of {0..k_i-1}

    int ell() const { return __builtin_popcount(index_mask); }
    bool operator==(const FaceRef& o) const {
        return simplex == o.simplex && index_mask == o.index_mask;
    }
};

/// Lexicographic order on the ascending index sequences of two masks.
bool mask_lex_less(std::uint32_t a, std::uint32_t b);

FaceRef opposite_face(const ProductSpec& spec, const FaceRef& f);

/// Intersection of faces of one simplex; Empty when the masks are disjoint.
std::optional<FaceRef> face_intersection(const ProductSpec& spec, const std::vector<FaceRef>& faces);

/// Point of the product: per-factor barycentric coordinates, each summing to 1.
struct ProductPoint {
    std::vector<std::vector<Rational>> coords;

    void validate(const ProductSpec& spec) const;
    bool operator==(const ProductPoint& o) const { return coords == o.coords; }
};

/// Center (1/k_i, ..., 1/k_i) in every factor.
ProductPoint product_center(const ProductSpec& spec);
/// Vertex e_v in the given factor, center elsewhere.
std::vector<Rational> simplex_vertex(int k, int v);

/// sum_{j in mask} x_{i,j} == 1, exactly.
bool is_in_face(const ProductPoint& x, const FaceRef& f);

/// Some coordinate entry is zero, i.e. x lies in an embedded (k_i-1)-face.
bool on_boundary(const ProductPoint& x);

}  // namespace meandim
