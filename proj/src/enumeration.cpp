#include "arith/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arith/error.hpp"

namespace arith {

PackedD pack(const DVector& d) {
  PackedD p(d.size(), '\0');
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 255) throw Error(ErrorCode::CapExceeded, "d entry too large to pack");
    p[i] = static_cast<char>(static_cast<unsigned char>(d[i]));
  }
  return p;
}

DVector unpack(const PackedD& p) {
  std::vector<std::uint64_t> d(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) d[i] = static_cast<unsigned char>(p[i]);
  return DVector(std::move(d));
}

namespace {

// Packed bytes compare as signed chars in std::string; force unsigned order.
bool packed_less(const PackedD& a, const PackedD& b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return static_cast<unsigned char>(x) < static_cast<unsigned char>(y);
      });
}

void sort_unique(std::vector<PackedD>& keys) {
  std::sort(keys.begin(), keys.end(), packed_less);
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

}  // namespace

StructureCatalog::StructureCatalog(GraphFamily family, std::vector<PackedD> keys)
    : family_(family), keys_(std::move(keys)) {
  sort_unique(keys_);
}

ArithmeticalStructure StructureCatalog::structure(std::size_t i) const {
  auto s = make_structure(family_, d(i));
  if (!s) throw Error(ErrorCode::InternalError, "catalog entry is not a structure");
  return std::move(*s);
}

std::optional<std::size_t> StructureCatalog::index_of(const DVector& d) const {
  if (d.size() != family_.n || d.max_entry() > 255) return std::nullopt;
  const PackedD p = pack(d);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), p, packed_less);
  if (it == keys_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - keys_.begin());
}

bool StructureCatalog::contains(const DVector& d) const {
  return index_of(d).has_value();
}

std::vector<DVector> StructureCatalog::d_vectors() const {
  std::vector<DVector> out;
  out.reserve(keys_.size());
  for (const auto& k : keys_) out.push_back(unpack(k));
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<Orbit> orbit_index(const StructureCatalog& catalog) {
  std::vector<std::pair<PackedD, std::size_t>> tagged;
  tagged.reserve(catalog.size());
  for (std::size_t i = 0; i < catalog.size(); ++i)
    tagged.emplace_back(pack(canonical_key(catalog.family().kind, catalog.d(i)).d), i);
  std::sort(tagged.begin(), tagged.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return packed_less(a.first, b.first);
    return a.second < b.second;
  });
  std::vector<Orbit> orbits;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (i == 0 || tagged[i].first != tagged[i - 1].first)
      orbits.push_back({CanonicalKey{unpack(tagged[i].first)}, {}});
    orbits.back().members.push_back(tagged[i].second);
  }
  return orbits;
}

std::size_t burnside_orbit_count(const StructureCatalog& catalog) {
  const std::size_t n = catalog.family().n;
  std::vector<DihedralElement> group;
  if (catalog.family().kind == FamilyKind::Cycle) {
    group = dihedral_group(n);
  } else {
    group = {{0, false}, {n - 1, true}};  // identity and k -> n-1-k
  }
  std::size_t fixed = 0;
  for (const auto& key : catalog.keys()) {
    for (const auto& g : group) {
      bool same = true;
      for (std::size_t i = 0; i < n && same; ++i) same = key[i] == key[g.source(i, n)];
      fixed += same;
    }
  }
  if (fixed % group.size() != 0)
    throw Error(ErrorCode::InternalError, "Burnside sum not divisible by group order");
  return fixed / group.size();
}

OrbitCount count_orbits(const StructureCatalog& catalog) {
  const auto orbits = orbit_index(catalog);
  const std::size_t group_order =
      catalog.family().kind == FamilyKind::Cycle ? 2 * catalog.family().n : 2;
  std::size_t covered = 0;
  for (const auto& o : orbits) {
    if (group_order % o.members.size() != 0)
      throw Error(ErrorCode::InternalError,
                  "orbit of " + format_vector(o.key.d.view()) + " has size " +
                      std::to_string(o.members.size()) + " not dividing " +
                      std::to_string(group_order));
    covered += o.members.size();
  }
  if (covered != catalog.size())
    throw Error(ErrorCode::InternalError, "orbits do not cover the catalog");
  if (burnside_orbit_count(catalog) != orbits.size())
    throw Error(ErrorCode::InternalError, "Burnside count disagrees with orbit index");
  return {catalog.family().n, catalog.size(), orbits.size()};
}

StructureCatalog enumerate_cycle(std::size_t n, std::size_t cap) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "cycles need n >= 3");
  if (n > cap)
    throw Error(ErrorCode::CapExceeded,
                "n = " + std::to_string(n) + " exceeds the cap " + std::to_string(cap));

  StructureCatalog level = brute_force_cycle(3, 3 + 4);
  if (level.size() != binomial(5, 2))
    throw Error(ErrorCode::InternalError, "C_3 base case does not have 10 structures");

  for (std::size_t m = 4; m <= n; ++m) {
    const std::size_t prev = m - 1;
    std::vector<PackedD> next;
    next.reserve(level.size() * m + 1);
    next.emplace_back(m, '\2');
    for (const auto& key : level.keys()) {
      // New unit vertex lands at index p, between old vertices p-1 and p (mod prev).
      // Both p = 0 and p = prev split the wrap-around edge.
      for (std::size_t p = 0; p <= prev; ++p) {
        PackedD t = key;
        const std::size_t left = (p + prev - 1) % prev, right = p % prev;
        t[left] = static_cast<char>(static_cast<unsigned char>(t[left]) + 1);
        t[right] = static_cast<char>(static_cast<unsigned char>(t[right]) + 1);
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(p), '\1');
        next.push_back(std::move(t));
      }
    }
    level = StructureCatalog(GraphFamily::cycle(m), std::move(next));
  }
  return level;
}

namespace {

using i128 = __int128;

// Open interval (lo_num/lo_den, hi_num/hi_den) of admissible t = r_1 / r_0.
struct RatioWindow {
  i128 lo_num = 0, lo_den = 1;
  i128 hi_num = 1, hi_den = 0;  // hi_den == 0 means +infinity

  // Intersect with {t : a + b t > 0}; false if the window becomes empty.
  bool restrict(i128 a, i128 b) {
    if (b == 0) return a > 0;
    if (b > 0) {
      // t > -a/b
      if (-a * lo_den > lo_num * b) { lo_num = -a; lo_den = b; }
    } else {
      // t < a/(-b)
      if (hi_den == 0 || a * hi_den < hi_num * (-b)) { hi_num = a; hi_den = -b; }
    }
    return hi_den == 0 || lo_num * hi_den < hi_num * lo_den;
  }

  bool contains(i128 p, i128 q) const {  // q > 0
    if (!(p * lo_den > lo_num * q)) return false;
    return hi_den == 0 || p * hi_den < hi_num * q;
  }
};

struct CycleScan {
  std::size_t n;
  i128 cap;
  std::vector<std::uint64_t> d;
  std::vector<i128> a, b;
  std::vector<PackedD> found;
  BruteForceStats stats;

  void check(const std::vector<std::uint64_t>& cand) {
    ++stats.kernel_checks;
    DVector dv(cand);
    if (r_from_d(GraphFamily::cycle(n), dv).valid()) found.push_back(pack(dv));
  }

  void leaf(const RatioWindow& w) {
    const std::size_t l = n - 1;
    for (i128 dl = 1; dl <= cap; ++dl) {
      ++stats.leaves;
      d[l] = static_cast<std::uint64_t>(dl);
      // vertex n-1 equation in (r_0, r_1): P r_0 + Q r_1 = 0
      const i128 P = dl * a[l] - a[l - 1] - 1;
      const i128 Q = dl * b[l] - b[l - 1];
      if (Q == 0) {
        if (P != 0) continue;
        for (i128 d0 = 1; d0 <= cap; ++d0) {
          d[0] = static_cast<std::uint64_t>(d0);
          check(d);
        }
        continue;
      }
      i128 p = -P, q = Q;
      if (q < 0) { p = -p; q = -q; }
      if (!w.contains(p, q)) continue;
      // vertex 0 pins d_0 = a_{n-1} + (1 + b_{n-1}) t.
      const i128 num = a[l] * q + (1 + b[l]) * p;
      if (num % q != 0) continue;
      const i128 d0 = num / q;
      if (d0 < 1 || d0 > cap) continue;
      d[0] = static_cast<std::uint64_t>(d0);
      check(d);
    }
  }

  void descend(std::size_t k, RatioWindow w) {
    if (k == n - 1) {
      leaf(w);
      return;
    }
    for (i128 dk = 1; dk <= cap; ++dk) {
      d[k] = static_cast<std::uint64_t>(dk);
      a[k + 1] = dk * a[k] - a[k - 1];
      b[k + 1] = dk * b[k] - b[k - 1];
      RatioWindow next = w;
      if (!next.restrict(a[k + 1], b[k + 1])) continue;
      descend(k + 1, next);
    }
  }
};

}  // namespace

StructureCatalog brute_force_cycle(std::size_t n, std::uint64_t d_cap,
                                   BruteForceStats* stats) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "cycles need n >= 3");
  if (n > kMaxBruteForceN)
    throw Error(ErrorCode::CapExceeded, "brute force is limited to n <= 9");
  if (d_cap < 1) throw Error(ErrorCode::InvalidArgument, "d_cap must be positive");
  // Recurrence coefficients grow like (d_cap + 1)^n; keep them far inside 64 bits
  // so every product below fits in 128.
  if (static_cast<double>(n) * std::log2(static_cast<double>(d_cap) + 1.0) > 60.0)
    throw Error(ErrorCode::CapExceeded, "d_cap too large for the exact scan");

  CycleScan scan{n, static_cast<i128>(d_cap), std::vector<std::uint64_t>(n, 1),
                 std::vector<i128>(n, 0), std::vector<i128>(n, 0), {}, {}};
  scan.a[0] = 1; scan.b[0] = 0;
  scan.a[1] = 0; scan.b[1] = 1;
  scan.descend(1, RatioWindow{});
  if (stats) *stats = scan.stats;
  return StructureCatalog(GraphFamily::cycle(n), std::move(scan.found));
}

namespace {

struct PathScan {
  std::size_t n;
  std::int64_t bound;
  std::vector<std::int64_t> limit;  // r_j <= bound^(n-1-j)
  std::vector<std::uint64_t> d;
  std::vector<std::int64_t> r;
  std::vector<PackedD> found;

  // r_0 = 1 and r_{n-1} = 1 for every path structure (the r_0 = 1 scaling is
  // integral, so it is already primitive; the same holds from the other end).
  void descend(std::size_t k) {
    if (k == n - 1) {
      if (r[n - 1] != 1) return;
      const std::int64_t last = r[n - 2];
      if (last < 1 || last > bound) return;
      d[n - 1] = static_cast<std::uint64_t>(last);
      DVector dv(d);
      if (r_from_d(GraphFamily::path(n), dv).valid()) found.push_back(pack(dv));
      return;
    }
    const std::int64_t before = k == 0 ? 0 : r[k - 1];
    for (std::int64_t dk = 1; dk <= bound; ++dk) {
      const std::int64_t next = dk * r[k] - before;
      if (next <= 0) continue;
      if (next > limit[k + 1]) break;  // increasing in dk
      d[k] = static_cast<std::uint64_t>(dk);
      r[k + 1] = next;
      descend(k + 1);
    }
  }
};

}  // namespace

PathSearchResult enumerate_path(std::size_t n, std::uint64_t bound) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "paths need n >= 2");
  if (n > kMaxPathN) throw Error(ErrorCode::CapExceeded, "path search is limited to n <= 9");
  if (bound == 0) bound = 2 * n;
  if (static_cast<double>(n) * std::log2(static_cast<double>(bound) + 1.0) > 60.0)
    throw Error(ErrorCode::CapExceeded, "path search bound too large");

  PathScan scan{n, static_cast<std::int64_t>(bound), std::vector<std::int64_t>(n, 1),
                std::vector<std::uint64_t>(n, 1), std::vector<std::int64_t>(n, 0), {}};
  for (std::size_t j = n; j-- > 0;)
    scan.limit[j] = j + 1 == n ? 1 : scan.limit[j + 1] * scan.bound;
  scan.r[0] = 1;
  scan.descend(0);

  PathSearchResult result{StructureCatalog(GraphFamily::path(n), std::move(scan.found)),
                          bound, false};
  for (const auto& key : result.catalog.keys())
    if (unpack(key).max_entry() >= bound) result.bound_hit = true;
  return result;
}

UnitVertexReport check_unit_vertex(const StructureCatalog& catalog) {
  if (catalog.family().kind != FamilyKind::Cycle)
    throw Error(ErrorCode::InvalidArgument, "unit-vertex check applies to cycles");
  const std::size_t n = catalog.family().n;
  UnitVertexReport report{n, 0, {}};
  for (const auto& key : catalog.keys()) {
    if (std::all_of(key.begin(), key.end(), [](char c) { return c == 2; })) continue;
    ++report.checked;
    bool ok = false;
    for (std::size_t i = 0; i < n && !ok; ++i)
      ok = key[i] == 1 && key[(i + n - 1) % n] != 1 && key[(i + 1) % n] != 1;
    if (!ok) report.counterexamples.push_back(unpack(key));
  }
  return report;
}

}  // namespace arith
