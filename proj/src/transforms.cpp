#include "arith/transforms.hpp"

#include <algorithm>

#include "arith/error.hpp"

namespace arith {

std::size_t DihedralElement::source(std::size_t i, std::size_t n) const noexcept {
  const std::size_t r = rotation % n;
  i %= n;
  return reflected ? (r + n - i) % n : (i + r) % n;
}

DihedralElement compose(const DihedralElement& g, const DihedralElement& h,
                        std::size_t n) noexcept {
  const std::size_t a = g.rotation % n, b = h.rotation % n;
  if (!g.reflected) return {(a + b) % n, h.reflected};
  return {(a + n - b) % n, !h.reflected};
}

DihedralElement inverse(const DihedralElement& g, std::size_t n) noexcept {
  if (g.reflected) return {g.rotation % n, true};
  return {(n - g.rotation % n) % n, false};
}

std::vector<DihedralElement> dihedral_group(std::size_t n) {
  std::vector<DihedralElement> out;
  out.reserve(2 * n);
  for (std::size_t r = 0; r < n; ++r) out.push_back({r, false});
  for (std::size_t r = 0; r < n; ++r) out.push_back({r, true});
  return out;
}

namespace {

void require_cycle(const ArithmeticalStructure& s, const char* op) {
  if (s.family().kind != FamilyKind::Cycle)
    throw Error(ErrorCode::InvalidArgument, std::string(op) + " needs a cycle");
}

}  // namespace

DVector subdivide_d(const DVector& d, std::size_t edge) {
  const std::size_t n = d.size();
  if (edge >= n) throw Error(ErrorCode::InvalidArgument, "edge index out of range");
  std::vector<std::uint64_t> out(d.entries);
  out[edge] += 1;
  out[(edge + 1) % n] += 1;
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(edge + 1), 1);
  return DVector(std::move(out));
}

DVector smooth_d(const DVector& d, std::size_t v) {
  const std::size_t n = d.size();
  if (v >= n) throw Error(ErrorCode::InvalidArgument, "vertex index out of range");
  if (n <= 3)
    throw Error(ErrorCode::SizeTooSmall, "cannot smooth a cycle with 3 vertices");
  if (d[v] != 1)
    throw Error(ErrorCode::SmoothAtNonUnit,
                "d_" + std::to_string(v + 1) + " = " + std::to_string(d[v]) + " is not 1");
  std::vector<std::uint64_t> out(d.entries);
  out[(v + n - 1) % n] -= 1;
  out[(v + 1) % n] -= 1;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(v));
  return DVector(std::move(out));
}

ArithmeticalStructure subdivide(const ArithmeticalStructure& s, std::size_t edge) {
  require_cycle(s, "subdivide");
  const std::size_t n = s.size();
  DVector d = subdivide_d(s.d(), edge);
  std::vector<mpz_class> r(s.r().entries);
  mpz_class w = r[edge] + r[(edge + 1) % n];
  r.insert(r.begin() + static_cast<std::ptrdiff_t>(edge + 1), std::move(w));
  return {GraphFamily::cycle(n + 1), std::move(d), RVector(std::move(r))};
}

ArithmeticalStructure smooth(const ArithmeticalStructure& s, std::size_t v) {
  require_cycle(s, "smooth");
  const std::size_t n = s.size();
  DVector d = smooth_d(s.d(), v);
  std::vector<mpz_class> r(s.r().entries);
  r.erase(r.begin() + static_cast<std::ptrdiff_t>(v));
  return {GraphFamily::cycle(n - 1), std::move(d), RVector(std::move(r))};
}

DVector apply(const DVector& d, const DihedralElement& g) {
  const std::size_t n = d.size();
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = d[g.source(i, n)];
  return DVector(std::move(out));
}

ArithmeticalStructure apply(const ArithmeticalStructure& s, const DihedralElement& g) {
  require_cycle(s, "apply");
  const std::size_t n = s.size();
  std::vector<mpz_class> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = s.r()[g.source(i, n)];
  return {s.family(), apply(s.d(), g), RVector(std::move(r))};
}

CanonicalKey canonical_key(FamilyKind kind, const DVector& d) {
  const std::size_t n = d.size();
  if (kind == FamilyKind::Path) {
    DVector rev(std::vector<std::uint64_t>(d.entries.rbegin(), d.entries.rend()));
    return {std::min(d, rev)};
  }
  // Compare images in place; materialise only the winner.
  DihedralElement best{0, false};
  auto less = [&](const DihedralElement& g, const DihedralElement& h) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = d[g.source(i, n)], y = d[h.source(i, n)];
      if (x != y) return x < y;
    }
    return false;
  };
  for (const auto& g : dihedral_group(n))
    if (less(g, best)) best = g;
  return {apply(d, best)};
}

CanonicalKey canonical_key(const ArithmeticalStructure& s) {
  return canonical_key(s.family().kind, s.d());
}

}  // namespace arith
