#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace arith {

enum class FamilyKind { Cycle, Path };

const char* to_string(FamilyKind kind) noexcept;

// Cycle C_n (n >= 3) or path P_n (n >= 2). Vertices are 0-based.
struct GraphFamily {
  FamilyKind kind = FamilyKind::Cycle;
  std::size_t n = 0;

  static GraphFamily cycle(std::size_t n) { return {FamilyKind::Cycle, n}; }
  static GraphFamily path(std::size_t n) { return {FamilyKind::Path, n}; }

  bool valid() const noexcept;
  std::size_t degree(std::size_t v) const noexcept;
  bool adjacent(std::size_t u, std::size_t v) const noexcept;
  // Neighbours of v in increasing-index order of (v-1, v+1); size 1 or 2.
  std::vector<std::size_t> neighbors(std::size_t v) const;

  friend bool operator==(const GraphFamily&, const GraphFamily&) = default;
};

// Diagonal labels d. Entries are positive; bounded by n+2 on cycles.
struct DVector {
  std::vector<std::uint64_t> entries;

  DVector() = default;
  explicit DVector(std::vector<std::uint64_t> e) : entries(std::move(e)) {}
  DVector(std::initializer_list<std::uint64_t> e) : entries(e) {}

  std::size_t size() const noexcept { return entries.size(); }
  std::uint64_t operator[](std::size_t i) const { return entries[i]; }
  std::uint64_t& operator[](std::size_t i) { return entries[i]; }
  std::uint64_t max_entry() const noexcept;
  std::span<const std::uint64_t> view() const noexcept { return entries; }

  friend auto operator<=>(const DVector&, const DVector&) = default;
  friend bool operator==(const DVector&, const DVector&) = default;
};

// Kernel labels r: positive, gcd 1, arbitrary precision.
struct RVector {
  std::vector<mpz_class> entries;

  RVector() = default;
  explicit RVector(std::vector<mpz_class> e) : entries(std::move(e)) {}
  RVector(std::initializer_list<long> e);

  std::size_t size() const noexcept { return entries.size(); }
  const mpz_class& operator[](std::size_t i) const { return entries[i]; }
  mpz_class& operator[](std::size_t i) { return entries[i]; }
  mpz_class sum() const;
  mpz_class gcd() const;
  std::vector<std::string> to_strings() const;

  friend bool operator==(const RVector& a, const RVector& b);
};

class ArithmeticalStructure {
 public:
  ArithmeticalStructure(GraphFamily family, DVector d, RVector r)
      : family_(family), d_(std::move(d)), r_(std::move(r)) {}

  const GraphFamily& family() const noexcept { return family_; }
  const DVector& d() const noexcept { return d_; }
  const RVector& r() const noexcept { return r_; }
  std::size_t size() const noexcept { return family_.n; }

  bool is_laplacian() const noexcept;

  friend bool operator==(const ArithmeticalStructure&,
                         const ArithmeticalStructure&) = default;

 private:
  GraphFamily family_;
  DVector d_;
  RVector r_;
};

enum class KernelStatus { Valid, NoPositiveKernel };

struct KernelSolution {
  KernelStatus status = KernelStatus::NoPositiveKernel;
  std::optional<RVector> r;

  bool valid() const noexcept { return status == KernelStatus::Valid; }
};

ArithmeticalStructure laplacian_structure(GraphFamily family);

// Exact kernel solve. Cycles use the two-unknown recurrence; paths use
// fraction-free elimination. Throws Error{InvalidArgument} on malformed d.
KernelSolution r_from_d(GraphFamily family, const DVector& d);

// Cross-check route: fraction-free Gauss-Jordan on diag(d) - A for any
// family.
KernelSolution r_from_d_bareiss(GraphFamily family, const DVector& d);

// Throws Error{NonIntegralQuotient} when some r_i does not divide the sum of
// its neighbours, Error{InvalidArgument} on malformed r.
DVector d_from_r(GraphFamily family, const RVector& r);

bool validate(const ArithmeticalStructure& s);

// Builds the structure for d, or nullopt when d admits no positive kernel.
std::optional<ArithmeticalStructure> make_structure(GraphFamily family,
                                                    const DVector& d);

// Rank-deficient integer matrices: a basis of the rational kernel, each
// vector scaled to coprime integers. Row-major, rows x cols.
std::vector<std::vector<mpz_class>> integer_kernel(
    std::vector<mpz_class> matrix, std::size_t rows, std::size_t cols);

std::string format_vector(std::span<const std::uint64_t> v);
std::string format_vector(const RVector& r);

}  // namespace arith
