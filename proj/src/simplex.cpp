#include "meandim/simplex.hpp"

#include <stdexcept>

namespace meandim {

void ProductSpec::validate() const {
    if (k.empty()) throw std::invalid_argument("ProductSpec: no factors");
    for (int ki : k) {
        if (ki < 2) throw std::invalid_argument("ProductSpec: factor size must be >= 2");
        if (ki > 31) throw std::invalid_argument("ProductSpec: factor size must fit a 32-bit mask");
    }
}

int ProductSpec::dimension() const {
    int d = 0;
    for (int ki : k) d += ki - 1;
    return d;
}

int ProductSpec::strong_order_bound() const {
    int d = 0;
    for (int ki : k) d += ki;
    return d;
}

bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
    while (a && b) {
        int ia = __builtin_ctz(a), ib = __builtin_ctz(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return a == 0 && b != 0;  // shorter prefix is smaller
}

FaceRef opposite_face(const ProductSpec& spec, const FaceRef& f) {
    spec.validate();
    if (f.simplex >= spec.factors()) throw std::out_of_range("opposite_face: bad simplex index");
    std::uint32_t full = (1u << spec.k[f.simplex]) - 1u;
    if (f.index_mask == 0 || (f.index_mask & ~full))
        throw std::invalid_argument("opposite_face: mask outside the simplex");
    if (f.index_mask == full) throw std::invalid_argument("opposite_face: the whole simplex has no opposite");
    return FaceRef{f.simplex, full & ~f.index_mask};
}

std::optional<FaceRef> face_intersection(const ProductSpec& spec, const std::vector<FaceRef>& faces) {
    if (faces.empty()) throw std::invalid_argument("face_intersection: empty face list");
    std::uint32_t full = (1u << spec.k[faces.front().simplex]) - 1u;
    std::uint32_t m = full;
    for (const FaceRef& f : faces) {
        if (f.simplex != faces.front().simplex)
            throw std::invalid_argument("face_intersection: faces of different factors");
        m &= f.index_mask;
    }
    if (m == 0) return std::nullopt;
    return FaceRef{faces.front().simplex, m};
}

void ProductPoint::validate(const ProductSpec& spec) const {
    if (coords.size() != spec.factors()) throw std::invalid_argument("ProductPoint: factor count mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i].size() != static_cast<std::size_t>(spec.k[i]))
            throw std::invalid_argument("ProductPoint: coordinate count mismatch");
        Rational sum(0);
        for (const Rational& c : coords[i]) {
            if (c.sign() < 0) throw std::invalid_argument("ProductPoint: negative coordinate");
            sum += c;
        }
        if (sum != Rational(1)) throw std::invalid_argument("ProductPoint: coordinates must sum to 1");
    }
}

ProductPoint product_center(const ProductSpec& spec) {
    ProductPoint p;
    for (int ki : spec.k) p.coords.emplace_back(ki, Rational(1, ki));
    return p;
}

std::vector<Rational> simplex_vertex(int k, int v) {
    std::vector<Rational> c(static_cast<std::size_t>(k), Rational(0));
    c[static_cast<std::size_t>(v)] = Rational(1);
    return c;
}

bool is_in_face(const ProductPoint& x, const FaceRef& f) {
    const auto& c = x.coords.at(f.simplex);
    Rational sum(0);
    for (std::size_t j = 0; j < c.size(); ++j)
        if (f.index_mask & (1u << j)) sum += c[j];
    return sum == Rational(1);
}

bool on_boundary(const ProductPoint& x) {
    for (const auto& factor : x.coords)
        for (const Rational& c : factor)
            if (c.is_zero()) return true;
    return false;
}

}  // namespace meandim
