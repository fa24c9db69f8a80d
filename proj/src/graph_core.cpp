#include "arith/graph_core.hpp"

#include <algorithm>
#include <sstream>

#include "arith/error.hpp"

namespace arith {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonIntegralQuotient: return "NonIntegralQuotient";
    case ErrorCode::SmoothAtNonUnit: return "SmoothAtNonUnit";
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::CatalogMissing: return "CatalogMissing";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

const char* to_string(FamilyKind kind) noexcept {
  return kind == FamilyKind::Cycle ? "cycle" : "path";
}

bool GraphFamily::valid() const noexcept {
  return kind == FamilyKind::Cycle ? n >= 3 : n >= 2;
}

std::size_t GraphFamily::degree(std::size_t v) const noexcept {
  if (kind == FamilyKind::Cycle) return 2;
  return (v == 0 || v + 1 == n) ? 1 : 2;
}

bool GraphFamily::adjacent(std::size_t u, std::size_t v) const noexcept {
  if (u >= n || v >= n || u == v) return false;
  const std::size_t lo = std::min(u, v), hi = std::max(u, v);
  if (hi - lo == 1) return true;
  return kind == FamilyKind::Cycle && lo == 0 && hi == n - 1;
}

std::vector<std::size_t> GraphFamily::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  if (kind == FamilyKind::Cycle) {
    out.push_back((v + n - 1) % n);
    out.push_back((v + 1) % n);
    return out;
  }
  if (v > 0) out.push_back(v - 1);
  if (v + 1 < n) out.push_back(v + 1);
  return out;
}

std::uint64_t DVector::max_entry() const noexcept {
  return entries.empty() ? 0 : *std::max_element(entries.begin(), entries.end());
}

RVector::RVector(std::initializer_list<long> e) {
  entries.reserve(e.size());
  for (long v : e) entries.emplace_back(v);
}

mpz_class RVector::sum() const {
  mpz_class s = 0;
  for (const auto& v : entries) s += v;
  return s;
}

mpz_class RVector::gcd() const {
  mpz_class g = 0;
  for (const auto& v : entries) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

std::vector<std::string> RVector::to_strings() const {
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (const auto& v : entries) out.push_back(v.get_str());
  return out;
}

bool operator==(const RVector& a, const RVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool ArithmeticalStructure::is_laplacian() const noexcept {
  for (std::size_t i = 0; i < d_.size(); ++i)
    if (d_[i] != family_.degree(i)) return false;
  return true;
}

namespace {

void check_d(GraphFamily family, const DVector& d) {
  if (!family.valid())
    throw Error(ErrorCode::InvalidArgument,
                std::string("invalid ") + to_string(family.kind) + " size " +
                    std::to_string(family.n));
  if (d.size() != family.n)
    throw Error(ErrorCode::InvalidArgument,
                "d has " + std::to_string(d.size()) + " entries, expected " +
                    std::to_string(family.n));
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] == 0)
      throw Error(ErrorCode::InvalidArgument,
                  "d entry " + std::to_string(i + 1) + " is zero");
}

mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

// Accepts v if it is strictly of one sign; flips to positive and divides by
// the gcd.
KernelSolution normalize_kernel(std::vector<mpz_class> v) {
  if (v.empty()) return {};
  const int s = sgn(v.front());
  if (s == 0) return {};
  for (const auto& x : v)
    if (sgn(x) != s) return {};
  mpz_class g = 0;
  for (auto& x : v) {
    if (s < 0) x = -x;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return {KernelStatus::Valid, RVector(std::move(v))};
}

// r_k = a_k r_0 + b_k r_1 for the cycle recurrence r_{k+1} = d_k r_k - r_{k-1};
// the two wrap-around equations then pin the ratio r_1 / r_0.
KernelSolution cycle_kernel(const DVector& d) {
  const std::size_t n = d.size();
  std::vector<mpz_class> a(n), b(n);
  a[0] = 1; b[0] = 0;
  a[1] = 0; b[1] = 1;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const mpz_class dk = to_mpz(d[k]);
    a[k + 1] = dk * a[k] - a[k - 1];
    b[k + 1] = dk * b[k] - b[k - 1];
  }
  const mpz_class dl = to_mpz(d[n - 1]);
  // vertex n-1: d r_{n-1} - r_{n-2} - r_0 = 0
  const mpz_class p1 = dl * a[n - 1] - a[n - 2] - 1;
  const mpz_class q1 = dl * b[n - 1] - b[n - 2];
  // vertex 0: d_0 r_0 - r_1 - r_{n-1} = 0
  const mpz_class p2 = to_mpz(d[0]) - a[n - 1];
  const mpz_class q2 = -1 - b[n - 1];

  if (p1 * q2 - q1 * p2 != 0) return {};
  // A kernel of dimension two has no positive vector (Perron-Frobenius for
  // irreducible Z-matrices), so it is reported as NoPositiveKernel.
  mpz_class r0, r1;
  if (p1 != 0 || q1 != 0) {
    r0 = -q1; r1 = p1;
  } else if (p2 != 0 || q2 != 0) {
    r0 = -q2; r1 = p2;
  } else {
    return {};
  }
  std::vector<mpz_class> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = a[k] * r0 + b[k] * r1;
  return normalize_kernel(std::move(r));
}

std::vector<mpz_class> laplacian_matrix(GraphFamily family, const DVector& d) {
  const std::size_t n = family.n;
  std::vector<mpz_class> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    m[i * n + i] = to_mpz(d[i]);
    for (std::size_t j : family.neighbors(i)) m[i * n + j] = -1;
  }
  return m;
}

}  // namespace

ArithmeticalStructure laplacian_structure(GraphFamily family) {
  if (!family.valid())
    throw Error(ErrorCode::InvalidArgument, "invalid graph size");
  std::vector<std::uint64_t> d(family.n);
  for (std::size_t i = 0; i < family.n; ++i) d[i] = family.degree(i);
  return {family, DVector(std::move(d)),
          RVector(std::vector<mpz_class>(family.n, mpz_class(1)))};
}

std::vector<std::vector<mpz_class>> integer_kernel(std::vector<mpz_class> m,
                                                   std::size_t rows,
                                                   std::size_t cols) {
  if (m.size() != rows * cols)
    throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch");
  auto at = [&](std::size_t i, std::size_t j) -> mpz_class& { return m[i * cols + j]; };

  // Fraction-free Gauss-Jordan: every division below is exact.
  mpz_class prev = 1;
  std::size_t pr = 0;
  std::vector<std::size_t> pivot_cols;
  mpz_class t;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t sel = pr;
    while (sel < rows && at(sel, c) == 0) ++sel;
    if (sel == rows) continue;
    if (sel != pr)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(sel, j), at(pr, j));
    const mpz_class p = at(pr, c);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr) continue;
      const mpz_class f = at(i, c);
      for (std::size_t j = 0; j < cols; ++j) {
        t = p * at(i, j) - f * at(pr, j);
        if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t()))
          throw Error(ErrorCode::InternalError, "inexact fraction-free step");
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = p;
    pivot_cols.push_back(c);
    ++pr;
  }

  std::vector<std::vector<mpz_class>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> x(cols, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
      x[pivot_cols[i]] = mpq_class(-at(i, f), at(i, pivot_cols[i]));
      x[pivot_cols[i]].canonicalize();
    }
    mpz_class l = 1;
    for (const auto& q : x)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> v(cols);
    mpz_class g = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      v[j] = x[j].get_num() * (l / x[j].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[j].get_mpz_t());
    }
    for (auto& e : v) e /= g;
    basis.push_back(std::move(v));
  }
  return basis;
}

KernelSolution r_from_d_bareiss(GraphFamily family, const DVector& d) {
  check_d(family, d);
  auto basis = integer_kernel(laplacian_matrix(family, d), family.n, family.n);
  if (basis.size() != 1) return {};
  return normalize_kernel(std::move(basis.front()));
}

KernelSolution r_from_d(GraphFamily family, const DVector& d) {
  check_d(family, d);
  if (family.kind == FamilyKind::Cycle) return cycle_kernel(d);
  return r_from_d_bareiss(family, d);
}

DVector d_from_r(GraphFamily family, const RVector& r) {
  if (!family.valid() || r.size() != family.n)
    throw Error(ErrorCode::InvalidArgument, "r has the wrong length");
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] < 1)
      throw Error(ErrorCode::InvalidArgument,
                  "r entry " + std::to_string(i + 1) + " is not positive");
  if (r.gcd() != 1)
    throw Error(ErrorCode::InvalidArgument, "r entries do not have gcd 1");

  std::vector<std::uint64_t> d(family.n);
  mpz_class s;
  for (std::size_t i = 0; i < family.n; ++i) {
    s = 0;
    for (std::size_t j : family.neighbors(i)) s += r[j];
    if (!mpz_divisible_p(s.get_mpz_t(), r[i].get_mpz_t()))
      throw Error(ErrorCode::NonIntegralQuotient,
                  "r_" + std::to_string(i + 1) + " = " + r[i].get_str() +
                      " does not divide its neighbour sum " + s.get_str());
    s /= r[i];
    if (!s.fits_ulong_p())
      throw Error(ErrorCode::InvalidArgument, "d entry exceeds 64 bits");
    d[i] = s.get_ui();
  }
  return DVector(std::move(d));
}

bool validate(const ArithmeticalStructure& s) {
  const auto& fam = s.family();
  if (!fam.valid() || s.d().size() != fam.n || s.r().size() != fam.n) return false;
  for (std::size_t i = 0; i < fam.n; ++i)
    if (s.d()[i] < 1 || s.r()[i] < 1) return false;
  if (s.r().gcd() != 1) return false;
  mpz_class lhs, rhs;
  for (std::size_t i = 0; i < fam.n; ++i) {
    lhs = s.r()[i] * to_mpz(s.d()[i]);
    rhs = 0;
    for (std::size_t j : fam.neighbors(i)) rhs += s.r()[j];
    if (lhs != rhs) return false;
  }
  return true;
}

std::optional<ArithmeticalStructure> make_structure(GraphFamily family,
                                                    const DVector& d) {
  auto sol = r_from_d(family, d);
  if (!sol.valid()) return std::nullopt;
  return ArithmeticalStructure(family, d, std::move(*sol.r));
}

std::string format_vector(std::span<const std::uint64_t> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string format_vector(const RVector& r) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i].get_str();
  os << ')';
  return os.str();
}

}  // namespace arith
