#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arith/enumeration.hpp"
#include "arith/graph_core.hpp"
#include "arith/spectra.hpp"

namespace arith {

struct Tolerances {
  double strict_margin = 1e-9;  // strict inequalities must clear this
  double equality = 1e-9;       // |a - b| <= equality counts as a = b
  double table = 0.005;         // half-unit of two-decimal rounding
  double jacobi_relative = 1e-12;

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

enum class Verdict { Pass, Fail, Skipped };

const char* to_string(Verdict v) noexcept;

struct Witness {
  std::string role;
  DVector d;
  std::vector<std::string> r;  // empty when d is not a structure
  double mu1 = 0.0;

  friend bool operator==(const Witness&, const Witness&) = default;
};

Witness make_witness(std::string role, GraphFamily family, const DVector& d, double mu1);

struct PerNResult {
  std::size_t n = 0;
  Verdict verdict = Verdict::Pass;
  std::optional<double> margin;  // smallest slack over the asserted inequalities
  std::vector<Witness> witnesses;
  std::map<std::string, double> values;
  std::string note;

  friend bool operator==(const PerNResult&, const PerNResult&) = default;
};

struct VerificationReport {
  std::string theorem_id;
  std::size_t n_lo = 0;
  std::size_t n_hi = 0;
  std::vector<PerNResult> per_n;
  Tolerances tolerances;

  bool pass() const noexcept;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct CheckOptions {
  Tolerances tol;
  std::size_t exhaustive_cap = 10;       // full-catalog checks above this throw CatalogMissing
  std::size_t oracle_max_n = 9;          // widened brute force in check_d_bound
  std::size_t dense_limit = 120;         // larger family matrices use isolated_top_eigenpair
  std::size_t max_witnesses = 5;
};

// Memoised cycle catalogs and their spectral radii. Not thread-safe; one
// store per campaign.
class CatalogStore {
 public:
  using Loader = std::function<std::optional<StructureCatalog>(std::size_t n)>;
  using Saver = std::function<void(const StructureCatalog&)>;

  explicit CatalogStore(std::size_t exhaustive_cap = 10, unsigned threads = 0);

  // Optional persistence hooks (the CLI wires its JSON-lines cache here).
  void set_loader(Loader loader) { loader_ = std::move(loader); }
  void set_saver(Saver saver) { saver_ = std::move(saver); }

  std::size_t exhaustive_cap() const noexcept { return cap_; }
  const StructureCatalog& catalog(std::size_t n);
  const std::vector<double>& mu1(std::size_t n);

 private:
  std::size_t cap_;
  unsigned threads_;
  Loader loader_;
  Saver saver_;
  std::map<std::size_t, std::unique_ptr<StructureCatalog>> catalogs_;
  std::map<std::size_t, std::vector<double>> mu1_;
};

// Order-preserving parallel map of mu_1 over a catalog.
std::vector<double> catalog_spectral_radii(const StructureCatalog& catalog,
                                           unsigned threads = 0);

// (1, n+2, 2, ..., 2)
DVector max_family_a(std::size_t n);
// (1, n+2, 1, 2 x k, 3, 2 x (n-4-k)), 0 <= k <= n-4
DVector max_family_b(std::size_t n, std::size_t k);
// (3, 1, 3, 2, ..., 2)
DVector d_313(std::size_t n);

PerNResult check_min(CatalogStore& store, std::size_t n, const CheckOptions& opt = {});
PerNResult check_nonlap_gt4(CatalogStore& store, std::size_t n, const CheckOptions& opt = {});
PerNResult check_lemma_M(std::size_t n, const CheckOptions& opt = {});
PerNResult check_313(std::size_t n, const CheckOptions& opt = {});
PerNResult check_d_bound(CatalogStore& store, std::size_t n, const CheckOptions& opt = {});
PerNResult check_families(CatalogStore& store, std::size_t n, const CheckOptions& opt = {});
PerNResult check_dstar(CatalogStore& store, std::size_t n, const CheckOptions& opt = {});
PerNResult check_discard(CatalogStore& store, std::size_t n, const CheckOptions& opt = {});
// Exhaustive when n <= store cap, families-only otherwise.
PerNResult check_max(CatalogStore& store, std::size_t n, const CheckOptions& opt = {});
PerNResult check_eigvec_bounds(std::size_t n, std::size_t k, const CheckOptions& opt = {});
PerNResult check_unit_vertex_n(CatalogStore& store, std::size_t n, const CheckOptions& opt = {});

enum class TheoremId {
  Min, NonLapGt4, LemmaM, D313, DBound, Families, DStar, Discard, Max, EigVec, UnitVertex,
};

const char* to_string(TheoremId id) noexcept;
std::optional<TheoremId> parse_theorem_id(const std::string& s);
const std::vector<TheoremId>& all_theorems();

// Runs one check for every n in [n_lo, n_hi]; eigvec covers every k.
VerificationReport run_check(TheoremId id, std::size_t n_lo, std::size_t n_hi,
                             CatalogStore& store, const CheckOptions& opt = {});

// mu_1 of the diag(d) - A family matrix: Jacobi up to dense_limit, certified
// power iteration beyond. Throws Error{NoConvergence} if the certificate fails.
double family_mu1(GraphFamily family, const DVector& d, const CheckOptions& opt);
EigenPair family_top_eigenpair(GraphFamily family, const DVector& d, const CheckOptions& opt);

}  // namespace arith
