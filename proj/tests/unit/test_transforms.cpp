#include <set>

#include "doctest.h"

#include "arith/enumeration.hpp"
#include "arith/error.hpp"
#include "arith/transforms.hpp"

using namespace arith;

namespace {

ArithmeticalStructure cyc(DVector d, RVector r) {
  const std::size_t n = d.size();
  return {GraphFamily::cycle(n), std::move(d), std::move(r)};
}

// Oracle: all 2n images by explicit rotation and reversal of the vector.
std::set<std::vector<std::uint64_t>> images(const std::vector<std::uint64_t>& d) {
  std::set<std::vector<std::uint64_t>> out;
  auto v = d;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      out.insert(v);
      std::rotate(v.begin(), v.begin() + 1, v.end());
    }
    std::reverse(v.begin(), v.end());
  }
  return out;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected arith::Error");
  return ErrorCode::InternalError;
}

}  // namespace

TEST_CASE("subdivide examples") {
  auto a = subdivide(laplacian_structure(GraphFamily::cycle(3)), 0);
  CHECK(a.d() == DVector{3, 1, 3, 2});
  CHECK(a.r() == RVector{1, 2, 1, 1});
  CHECK(validate(a));

  auto b = subdivide(cyc({1, 5, 2}, {3, 1, 2}), 1);
  CHECK(b.d() == DVector{1, 6, 1, 3});
  CHECK(b.r() == RVector{3, 1, 3, 2});
  CHECK(validate(b));

  // (7,2,2,2,1) on v2..v6; the edge v6-v2 is the wrap-around edge.
  auto right = cyc({7, 2, 2, 2, 1}, {1, 2, 3, 4, 5});
  auto left = subdivide(right, 4);
  CHECK(left.d() == DVector{8, 2, 2, 2, 2, 1});
  CHECK(left.r() == RVector{1, 2, 3, 4, 5, 6});
  CHECK(apply(cyc({1, 8, 2, 2, 2, 2}, {6, 1, 2, 3, 4, 5}), DihedralElement{1, false}) == left);
}

TEST_CASE("smooth examples") {
  auto right = smooth(cyc({1, 8, 2, 2, 2, 2}, {6, 1, 2, 3, 4, 5}), 0);
  CHECK(right.d() == DVector{7, 2, 2, 2, 1});
  CHECK(right.r() == RVector{1, 2, 3, 4, 5});

  auto back = smooth(cyc({3, 1, 3, 2}, {1, 2, 1, 1}), 1);
  CHECK(back == laplacian_structure(GraphFamily::cycle(3)));

  CHECK(code_of([] { smooth(laplacian_structure(GraphFamily::cycle(4)), 2); }) ==
        ErrorCode::SmoothAtNonUnit);
  CHECK(code_of([] { smooth(cyc({1, 3, 3}, {2, 1, 1}), 0); }) == ErrorCode::SizeTooSmall);
  CHECK(code_of([] { smooth(cyc({3, 1, 3, 2}, {1, 2, 1, 1}), 7); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("transforms need a cycle") {
  auto p = laplacian_structure(GraphFamily::path(4));
  CHECK(code_of([&] { subdivide(p, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { apply(p, DihedralElement{1, false}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("dihedral action examples") {
  auto s = cyc({3, 1, 3, 2}, {1, 2, 1, 1});
  auto t = apply(s, DihedralElement{1, false});
  CHECK(t.d() == DVector{1, 3, 2, 3});
  CHECK(t.r() == RVector{2, 1, 1, 1});
  CHECK(validate(t));
  CHECK(apply(DVector{1, 5, 2}, DihedralElement{0, true}) == DVector{1, 2, 5});
}

TEST_CASE("dihedral group laws") {
  for (std::size_t n = 3; n <= 7; ++n) {
    const auto group = dihedral_group(n);
    CHECK(group.size() == 2 * n);
    DVector probe;
    for (std::size_t i = 0; i < n; ++i) probe.entries.push_back(10 + i);
    std::set<DVector> seen;
    for (const auto& g : group) {
      seen.insert(apply(probe, g));
      CHECK(apply(apply(probe, g), inverse(g, n)) == probe);
      CHECK(compose(g, inverse(g, n), n) == DihedralElement{0, false});
      for (const auto& h : group)
        CHECK(apply(apply(probe, g), h) == apply(probe, compose(g, h, n)));
    }
    CHECK(seen.size() == 2 * n);
  }
}

TEST_CASE("canonical keys") {
  CHECK(canonical_key(FamilyKind::Cycle, {3, 2, 3, 1}).d == DVector{1, 3, 2, 3});
  CHECK(canonical_key(FamilyKind::Cycle, {2, 2, 2, 2, 2}).d == DVector{2, 2, 2, 2, 2});
  CHECK(canonical_key(FamilyKind::Path, {3, 1, 2, 1}).d == DVector{1, 2, 1, 3});
  CHECK(canonical_key(FamilyKind::Path, {1, 2, 1, 3}).d == DVector{1, 2, 1, 3});
  // d^k and d^{n-4-k} on C_9.
  for (std::size_t k = 0; k <= 5; ++k) {
    std::vector<std::uint64_t> a(9, 2), b(9, 2);
    a[0] = b[0] = 1;
    a[1] = b[1] = 11;
    a[2] = b[2] = 1;
    a[3 + k] = 3;
    b[3 + (5 - k)] = 3;
    CHECK(canonical_key(FamilyKind::Cycle, DVector(a)) == canonical_key(FamilyKind::Cycle, DVector(b)));
  }
}

TEST_CASE("canonical key equals the least explicit image over whole catalogs") {
  for (std::size_t n = 3; n <= 7; ++n) {
    auto cat = enumerate_cycle(n);
    for (std::size_t i = 0; i < cat.size(); ++i) {
      const auto s = cat.structure(i);
      const auto imgs = images(s.d().entries);
      const auto key = canonical_key(s);
      CHECK(key.d.entries == *imgs.begin());
      CHECK((2 * n) % imgs.size() == 0);
      for (const auto& g : dihedral_group(n)) {
        auto t = apply(s, g);
        CHECK(validate(t));
        CHECK(canonical_key(t) == key);
      }
    }
  }
}

TEST_CASE("subdivision and smoothing are inverse") {
  for (std::size_t n = 3; n <= 6; ++n) {
    auto cat = enumerate_cycle(n);
    for (std::size_t i = 0; i < cat.size(); ++i) {
      const auto s = cat.structure(i);
      for (std::size_t e = 0; e < n; ++e) {
        auto t = subdivide(s, e);
        CHECK(validate(t));
        CHECK(t.d()[e + 1] == 1);
        CHECK(t.r().sum() == s.r().sum() + s.r()[e] + s.r()[(e + 1) % n]);
        CHECK(t.r().gcd() == 1);
        CHECK(smooth(t, e + 1) == s);
      }
      if (n == 3) continue;
      for (std::size_t v = 0; v < n; ++v) {
        if (s.d()[v] != 1) continue;
        auto t = smooth(s, v);
        CHECK(validate(t));
        if (v > 0) {
          CHECK(subdivide(t, v - 1) == s);
        } else {
          // The joined edge wraps, so the unit vertex comes back at the end.
          CHECK(apply(subdivide(t, n - 2), DihedralElement{n - 1, false}) == s);
        }
      }
    }
  }
}

TEST_CASE("d-only transforms match the structure versions") {
  auto s = cyc({1, 8, 2, 2, 2, 2}, {6, 1, 2, 3, 4, 5});
  for (std::size_t e = 0; e < 6; ++e) CHECK(subdivide_d(s.d(), e) == subdivide(s, e).d());
  CHECK(smooth_d(s.d(), 0) == smooth(s, 0).d());
}
