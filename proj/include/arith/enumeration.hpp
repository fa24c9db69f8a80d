#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arith/graph_core.hpp"
#include "arith/transforms.hpp"

namespace arith {

// Byte-packed d-vector; ordering matches lexicographic order on d.
using PackedD = std::string;

PackedD pack(const DVector& d);
DVector unpack(const PackedD& p);

// Largest cycle size enumerate_cycle accepts by default; n = 12 already has
// 1,352,078 structures.
inline constexpr std::size_t kDefaultCycleCap = 12;
inline constexpr std::size_t kMaxBruteForceN = 9;
inline constexpr std::size_t kMaxPathN = 9;

// All arithmetical structures on one graph, keyed by exact d-vector and kept
// sorted. r is recomputed on demand from d.
class StructureCatalog {
 public:
  StructureCatalog(GraphFamily family, std::vector<PackedD> keys);

  const GraphFamily& family() const noexcept { return family_; }
  std::size_t size() const noexcept { return keys_.size(); }
  const std::vector<PackedD>& keys() const noexcept { return keys_; }

  DVector d(std::size_t i) const { return unpack(keys_[i]); }
  ArithmeticalStructure structure(std::size_t i) const;
  bool contains(const DVector& d) const;
  std::optional<std::size_t> index_of(const DVector& d) const;
  std::vector<DVector> d_vectors() const;

 private:
  GraphFamily family_;
  std::vector<PackedD> keys_;
};

struct OrbitCount {
  std::size_t n = 0;
  std::size_t total = 0;
  std::size_t up_to_symmetry = 0;
};

struct Orbit {
  CanonicalKey key;
  std::vector<std::size_t> members;  // catalog indices, ascending
};

// Orbits sorted by canonical key.
std::vector<Orbit> orbit_index(const StructureCatalog& catalog);

// Distinct canonical keys. For cycles also checks that orbit sizes divide 2n,
// sum to the total, and agree with a Burnside fixed-point average; throws
// Error{InternalError} on any mismatch.
OrbitCount count_orbits(const StructureCatalog& catalog);

// Burnside: (1/|G|) * sum over g of |Fix(g)|.
std::size_t burnside_orbit_count(const StructureCatalog& catalog);

// Base case by brute force, then Laplacian plus all subdivisions of level n-1.
StructureCatalog enumerate_cycle(std::size_t n, std::size_t cap = kDefaultCycleCap);

struct BruteForceStats {
  std::uint64_t leaves = 0;      // (d_2..d_n) completions examined
  std::uint64_t kernel_checks = 0;
};

// Every d in [1, d_cap]^n for which r_from_d is Valid.
StructureCatalog brute_force_cycle(std::size_t n, std::uint64_t d_cap,
                                   BruteForceStats* stats = nullptr);

struct PathSearchResult {
  StructureCatalog catalog;
  std::uint64_t search_bound = 0;
  // Some structure touched the search bound, so larger entries may exist.
  bool bound_hit = false;
};

// Exhaustive path search with entries up to `bound` (default 2n).
PathSearchResult enumerate_path(std::size_t n, std::uint64_t bound = 0);

struct UnitVertexReport {
  std::size_t n = 0;
  std::size_t checked = 0;
  std::vector<DVector> counterexamples;

  bool pass() const noexcept { return counterexamples.empty(); }
};

// Every non-Laplacian cycle structure has some d_i = 1 with both neighbours
// different from 1.
UnitVertexReport check_unit_vertex(const StructureCatalog& catalog);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace arith
