#pragma once

#include <cstddef>
#include <vector>

#include "arith/graph_core.hpp"

namespace arith {

// Element of D_2n acting on vertex positions: the image structure t of s
// satisfies t[i] = s[source(i)], where source(i) = i + rotation (mod n) for a
// rotation and rotation - i (mod n) for a reflection.
struct DihedralElement {
  std::size_t rotation = 0;
  bool reflected = false;

  std::size_t source(std::size_t i, std::size_t n) const noexcept;

  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
};

// apply(apply(s, g), h) == apply(s, compose(g, h, n)).
DihedralElement compose(const DihedralElement& g, const DihedralElement& h,
                        std::size_t n) noexcept;
DihedralElement inverse(const DihedralElement& g, std::size_t n) noexcept;
std::vector<DihedralElement> dihedral_group(std::size_t n);

struct CanonicalKey {
  DVector d;

  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
};

// Inserts a unit vertex after position `edge` (0-based; edge i joins
// vertices i and i+1 mod n). The new vertex sits at index edge+1.
ArithmeticalStructure subdivide(const ArithmeticalStructure& s, std::size_t edge);

// Removes vertex `v` (0-based), which must carry d = 1. Surviving vertices
// keep their cyclic order.
ArithmeticalStructure smooth(const ArithmeticalStructure& s, std::size_t v);

ArithmeticalStructure apply(const ArithmeticalStructure& s, const DihedralElement& g);
DVector apply(const DVector& d, const DihedralElement& g);

// Lexicographically least image of d under D_2n (cycles) or under the
// reversal k -> n+1-k (paths).
CanonicalKey canonical_key(FamilyKind kind, const DVector& d);
CanonicalKey canonical_key(const ArithmeticalStructure& s);

// Subdivision and smoothing on d alone; used by the enumerator.
DVector subdivide_d(const DVector& d, std::size_t edge);
DVector smooth_d(const DVector& d, std::size_t v);

}  // namespace arith
