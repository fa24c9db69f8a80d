#include "arith/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "arith/error.hpp"
#include "arith/transforms.hpp"

namespace arith {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "unknown";
}

bool VerificationReport::pass() const noexcept {
  return std::none_of(per_n.begin(), per_n.end(),
                      [](const PerNResult& r) { return r.verdict == Verdict::Fail; });
}

Witness make_witness(std::string role, GraphFamily family, const DVector& d, double mu1) {
  Witness w{std::move(role), d, {}, mu1};
  if (auto sol = r_from_d(family, d); sol.valid()) w.r = sol.r->to_strings();
  return w;
}

CatalogStore::CatalogStore(std::size_t exhaustive_cap, unsigned threads)
    : cap_(exhaustive_cap), threads_(threads) {}

const StructureCatalog& CatalogStore::catalog(std::size_t n) {
  if (auto it = catalogs_.find(n); it != catalogs_.end()) return *it->second;
  if (n > cap_)
    throw Error(ErrorCode::CatalogMissing,
                "no catalog for n = " + std::to_string(n) + " (exhaustive cap " +
                    std::to_string(cap_) + ")");
  std::optional<StructureCatalog> loaded;
  if (loader_) loaded = loader_(n);
  if (!loaded) {
    loaded = enumerate_cycle(n, std::max<std::size_t>(cap_, n));
    if (saver_) saver_(*loaded);
  }
  auto& slot = catalogs_[n];
  slot = std::make_unique<StructureCatalog>(std::move(*loaded));
  return *slot;
}

const std::vector<double>& CatalogStore::mu1(std::size_t n) {
  if (auto it = mu1_.find(n); it != mu1_.end()) return it->second;
  auto values = catalog_spectral_radii(catalog(n), threads_);
  return mu1_.emplace(n, std::move(values)).first->second;
}

std::vector<double> catalog_spectral_radii(const StructureCatalog& catalog, unsigned threads) {
  const std::size_t total = catalog.size();
  std::vector<double> out(total);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, total / 256)));
  const auto family = catalog.family();
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const DVector d = catalog.d(i);
      out[i] = spectral_radius(family, d.view());
    }
  };
  if (threads <= 1) {
    work(0, total);
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (total + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * chunk, hi = std::min(total, lo + chunk);
    if (lo < hi) pool.emplace_back(work, lo, hi);
  }
  for (auto& th : pool) th.join();
  return out;
}

DVector max_family_a(std::size_t n) {
  std::vector<std::uint64_t> d(n, 2);
  d[0] = 1;
  d[1] = n + 2;
  return DVector(std::move(d));
}

DVector max_family_b(std::size_t n, std::size_t k) {
  if (n < 4 || k > n - 4) throw Error(ErrorCode::InvalidArgument, "d^k needs n >= 4, k <= n-4");
  std::vector<std::uint64_t> d(n, 2);
  d[0] = 1;
  d[1] = n + 2;
  d[2] = 1;
  d[3 + k] = 3;
  return DVector(std::move(d));
}

DVector d_313(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "n >= 3");
  std::vector<std::uint64_t> d(n, 2);
  d[0] = 3;
  d[1] = 1;
  d[2] = 3;
  return DVector(std::move(d));
}

double family_mu1(GraphFamily family, const DVector& d, const CheckOptions& opt) {
  if (family.n <= opt.dense_limit)
    return eigenvalues(generalized_laplacian(family, d.view()),
                       {opt.tol.jacobi_relative, 100})
        .largest();
  auto cp = isolated_top_eigenpair(family, d.view());
  if (!cp.certified)
    throw Error(ErrorCode::NoConvergence, "power iteration not certified for " +
                                              format_vector(d.view()));
  return cp.pair.value;
}

EigenPair family_top_eigenpair(GraphFamily family, const DVector& d, const CheckOptions& opt) {
  if (family.n <= opt.dense_limit)
    return top_eigenpair(generalized_laplacian(family, d.view()), {opt.tol.jacobi_relative, 100});
  auto cp = isolated_top_eigenpair(family, d.view());
  if (!cp.certified)
    throw Error(ErrorCode::NoConvergence, "power iteration not certified for " +
                                              format_vector(d.view()));
  return cp.pair;
}

namespace {

// Accumulates conditions for one n; the first failure decides the verdict.
class Checker {
 public:
  Checker(std::size_t n, const CheckOptions& opt) : opt_(opt) { res_.n = n; }

  // Records slack >= 0 as a pass; negative slack fails with the witness.
  void require(bool ok, double slack, const std::string& what,
               const std::function<Witness()>& witness = {}) {
    res_.margin = res_.margin ? std::min(*res_.margin, slack) : slack;
    if (ok) return;
    res_.verdict = Verdict::Fail;
    if (!failure_notes_.empty()) failure_notes_ += "; ";
    failure_notes_ += what;
    if (witness && res_.witnesses.size() < opt_.max_witnesses) res_.witnesses.push_back(witness());
  }

  void note(const std::string& s) {
    if (!res_.note.empty()) res_.note += "; ";
    res_.note += s;
  }
  void value(const std::string& k, double v) { res_.values[k] = v; }
  void witness(Witness w) { res_.witnesses.push_back(std::move(w)); }

  PerNResult finish() {
    if (res_.verdict == Verdict::Fail) {
      note("FAILED: " + failure_notes_);
      if (res_.witnesses.empty())
        throw Error(ErrorCode::InternalError, "failed check without witness");
    }
    return std::move(res_);
  }

  PerNResult skip(const std::string& why) {
    res_.verdict = Verdict::Skipped;
    res_.margin.reset();
    note(why);
    return std::move(res_);
  }

 private:
  const CheckOptions& opt_;
  PerNResult res_;
  std::string failure_notes_;
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << std::fixed << v;
  return os.str();
}

bool is_all_twos(const PackedD& key) {
  return std::all_of(key.begin(), key.end(), [](char c) { return c == 2; });
}

std::size_t laplacian_index(const StructureCatalog& cat) {
  auto idx = cat.index_of(DVector(std::vector<std::uint64_t>(cat.family().n, 2)));
  if (!idx) throw Error(ErrorCode::InternalError, "catalog lacks the Laplacian structure");
  return *idx;
}

unsigned char max_byte(const PackedD& key) {
  unsigned char m = 0;
  for (char c : key) m = std::max(m, static_cast<unsigned char>(c));
  return m;
}

}  // namespace

PerNResult check_min(CatalogStore& store, std::size_t n, const CheckOptions& opt) {
  Checker c(n, opt);
  const auto& cat = store.catalog(n);
  const auto& mu = store.mu1(n);
  const auto fam = cat.family();
  const std::size_t lap = laplacian_index(cat);
  const double exact = laplacian_mu1_exact(n);

  c.value("mu1_laplacian", mu[lap]);
  c.value("mu1_exact", exact);
  c.require(std::abs(mu[lap] - exact) <= opt.tol.equality,
            opt.tol.equality - std::abs(mu[lap] - exact), "Laplacian mu1 differs from closed form",
            [&] { return make_witness("laplacian", fam, cat.d(lap), mu[lap]); });

  std::size_t runner = lap;
  double runner_mu = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (i == lap) continue;
    if (mu[i] < runner_mu) { runner_mu = mu[i]; runner = i; }
    const double gap = mu[i] - mu[lap] - opt.tol.strict_margin;
    if (gap < 0)
      c.require(false, gap, "non-Laplacian structure does not exceed the minimum",
                [&] { return make_witness("not-above-min", fam, cat.d(i), mu[i]); });
    if (n >= 6 && mu[i] - 4.0 - opt.tol.strict_margin < 0)
      c.require(false, mu[i] - 4.0 - opt.tol.strict_margin, "non-Laplacian mu1 <= 4",
                [&] { return make_witness("not-above-4", fam, cat.d(i), mu[i]); });
  }
  if (runner != lap) {
    c.require(true, runner_mu - mu[lap] - opt.tol.strict_margin, "");
    c.value("mu1_runner_up", runner_mu);
    c.witness(make_witness("argmin", fam, cat.d(lap), mu[lap]));
    c.witness(make_witness("runner-up", fam, cat.d(runner), runner_mu));
  }
  return c.finish();
}

PerNResult check_nonlap_gt4(CatalogStore& store, std::size_t n, const CheckOptions& opt) {
  Checker c(n, opt);
  const auto& cat = store.catalog(n);
  const auto& mu = store.mu1(n);
  const auto fam = cat.family();
  std::size_t best = cat.size();
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (is_all_twos(cat.keys()[i])) continue;
    if (best == cat.size() || mu[i] < mu[best]) best = i;
  }
  if (best == cat.size()) return c.skip("no non-Laplacian structures");
  c.value("min_nonlaplacian_mu1", mu[best]);
  if (n < 6) {
    c.witness(make_witness("min-nonlaplacian", fam, cat.d(best), mu[best]));
    return c.skip("outside hypothesis n >= 6; smallest non-Laplacian mu1 is " +
                  fmt(mu[best]) + " at " + format_vector(cat.d(best).view()));
  }
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (is_all_twos(cat.keys()[i])) continue;
    const double slack = mu[i] - 4.0 - opt.tol.strict_margin;
    if (slack < 0)
      c.require(false, slack, "non-Laplacian mu1 not above 4",
                [&] { return make_witness("not-above-4", fam, cat.d(i), mu[i]); });
  }
  c.require(true, mu[best] - 4.0 - opt.tol.strict_margin, "");
  c.witness(make_witness("min-nonlaplacian", fam, cat.d(best), mu[best]));
  return c.finish();
}

PerNResult check_lemma_M(std::size_t n, const CheckOptions& opt) {
  Checker c(n, opt);
  if (n < 5) return c.skip("outside hypothesis n >= 5");
  const auto fam = GraphFamily::path(n);
  const DVector d = d_313(n);
  const double mu = family_mu1(fam, d, opt);
  const double mu_next = family_mu1(GraphFamily::path(n + 1), d_313(n + 1), opt);
  c.value("mu1", mu);
  c.value("mu1_next", mu_next);
  auto w = [&] { return Witness{"lemma-matrix", d, {}, mu}; };
  c.require(mu - 4.0 - opt.tol.strict_margin >= 0, mu - 4.0 - opt.tol.strict_margin,
            "mu1(M) not above 4", w);
  c.require(mu <= mu_next + opt.tol.equality, mu_next + opt.tol.equality - mu,
            "mu1(M_n) > mu1(M_{n+1})", w);
  if (n == 5)
    c.require(mu > 4.08, mu - 4.08, "mu1(M) at n = 5 not above 4.08", w);
  c.witness(w());
  return c.finish();
}

PerNResult check_313(std::size_t n, const CheckOptions& opt) {
  Checker c(n, opt);
  const auto fam = GraphFamily::cycle(n);
  const DVector d = d_313(n);
  auto s = make_structure(fam, d);
  const double mu = family_mu1(fam, d, opt);
  c.value("mu1", mu);
  auto w = [&] { return make_witness("d313", fam, d, mu); };
  c.require(s.has_value(), s ? 0.0 : -1.0, "(3,1,3,2,...,2) is not a structure", w);
  if (n == 3 || n == 5) {
    c.require(std::abs(mu - 4.0) <= opt.tol.equality, opt.tol.equality - std::abs(mu - 4.0),
              "mu1 differs from 4", w);
  } else {
    const double slack = mu - 4.0 - opt.tol.strict_margin;
    c.require(slack >= 0, slack, "mu1 not above 4", w);
    if (n == 4)
      c.require(std::abs(mu - 4.41421) <= 1e-5, 1e-5 - std::abs(mu - 4.41421),
                "mu1 at n = 4 differs from 4.41421", w);
  }
  c.witness(w());
  return c.finish();
}

PerNResult check_d_bound(CatalogStore& store, std::size_t n, const CheckOptions& opt) {
  Checker c(n, opt);
  const auto& cat = store.catalog(n);
  const auto fam = cat.family();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < cat.size(); ++i)
    if (max_byte(cat.keys()[i]) > max_byte(cat.keys()[arg])) arg = i;
  const double top = max_byte(cat.keys()[arg]);
  c.value("max_entry", top);
  const double bound = static_cast<double>(n + 2);
  auto w = [&] { return make_witness("max-entry", fam, cat.d(arg), spectral_radius(fam, cat.d(arg).view())); };
  c.require(top <= bound, bound - top, "catalog entry above n+2", w);
  c.require(top == bound, top == bound ? 0.0 : -1.0, "maximum entry is not n+2", w);

  if (n <= opt.oracle_max_n && n <= kMaxBruteForceN) {
    const auto oracle = brute_force_cycle(n, n + 4);
    std::size_t oarg = 0;
    for (std::size_t i = 0; i < oracle.size(); ++i)
      if (max_byte(oracle.keys()[i]) > max_byte(oracle.keys()[oarg])) oarg = i;
    const double otop = max_byte(oracle.keys()[oarg]);
    c.value("oracle_cap", static_cast<double>(n + 4));
    c.value("oracle_max_entry", otop);
    c.require(otop <= bound, bound - otop, "widened oracle found an entry above n+2",
              [&] { return make_witness("oracle-above-bound", fam, oracle.d(oarg), 0.0); });
    c.require(oracle.keys() == cat.keys(), 0.0, "oracle and catalog differ", [&] {
      for (std::size_t i = 0; i < oracle.size(); ++i)
        if (!cat.contains(oracle.d(i))) return make_witness("oracle-only", fam, oracle.d(i), 0.0);
      for (std::size_t i = 0; i < cat.size(); ++i)
        if (!oracle.contains(cat.d(i))) return make_witness("catalog-only", fam, cat.d(i), 0.0);
      return make_witness("size-mismatch", fam, cat.d(0), 0.0);
    });
  } else {
    c.note("widened oracle not run for this n");
  }
  c.witness(w());
  return c.finish();
}

PerNResult check_families(CatalogStore& store, std::size_t n, const CheckOptions& opt) {
  Checker c(n, opt);
  const auto& cat = store.catalog(n);
  const auto fam = cat.family();
  std::vector<DVector> generators{max_family_a(n)};
  if (n >= 4)
    for (std::size_t k = 0; k + 4 <= n; ++k) generators.push_back(max_family_b(n, k));

  std::set<DVector> expected;
  std::set<CanonicalKey> orbit_keys;
  for (const auto& g : generators) {
    orbit_keys.insert(canonical_key(FamilyKind::Cycle, g));
    for (const auto& e : dihedral_group(n)) expected.insert(apply(g, e));
  }
  std::set<DVector> attained;
  for (std::size_t i = 0; i < cat.size(); ++i)
    if (max_byte(cat.keys()[i]) == n + 2) attained.insert(cat.d(i));

  c.value("orbits", static_cast<double>(orbit_keys.size()));
  c.value("structures_with_n_plus_2", static_cast<double>(attained.size()));
  for (const auto& d : expected)
    if (!attained.count(d))
      c.require(false, -1.0, "family member missing from catalog",
                [&] { return make_witness("family-not-in-catalog", fam, d, 0.0); });
  for (const auto& d : attained)
    if (!expected.count(d))
      c.require(false, -1.0, "structure with entry n+2 outside the families",
                [&] { return make_witness("unexplained", fam, d, spectral_radius(fam, d.view())); });
  if (n >= 4) {
    for (std::size_t k = 0; k + 4 <= n; ++k) {
      const DVector dk = max_family_b(n, k), dm = max_family_b(n, n - 4 - k);
      c.require(canonical_key(FamilyKind::Cycle, dk) == canonical_key(FamilyKind::Cycle, dm), 0.0,
                "d^k and d^{n-4-k} are in different orbits",
                [&] { return make_witness("d^k", fam, dk, 0.0); });
    }
  }
  c.require(true, 0.0, "");
  std::string keys;
  for (const auto& k : orbit_keys) keys += (keys.empty() ? "" : " ") + format_vector(k.d.view());
  c.note("orbits: " + keys);
  return c.finish();
}

PerNResult check_dstar(CatalogStore& store, std::size_t n, const CheckOptions& opt) {
  Checker c(n, opt);
  if (n < 6) return c.skip("outside hypothesis n >= 6");
  const auto& cat = store.catalog(n);
  const auto fam = cat.family();
  const DVector star = d_313(n);
  c.require(make_structure(fam, star).has_value(), 0.0, "d* is not a structure",
            [&] { return make_witness("d-star", fam, star, 0.0); });
  std::size_t checked = 0;
  double slack_sum = std::numeric_limits<double>::infinity();
  double slack_strong = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < cat.size(); ++idx) {
    const PackedD& key = cat.keys()[idx];
    if (max_byte(key) != n + 1) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<unsigned char>(key[i]) != n + 1) continue;
      ++checked;
      // rotate so that the n+1 entry sits at (1-based) position 2
      const DihedralElement g{(i + n - 1) % n, false};
      const DVector t = apply(cat.d(idx), g);
      for (std::size_t j = 0; j < n; ++j) {
        const double s = static_cast<double>(n + 2) - static_cast<double>(t[j] + star[j]);
        slack_sum = std::min(slack_sum, s);
        if (s < 0)
          c.require(false, s, "d_j + d*_j exceeds n+2",
                    [&] { return make_witness("aligned", fam, t, 0.0); });
        if (j == 1) continue;
        const double cap = (j == 0 || j == 2) ? 3.0 : 4.0;
        const double s2 = cap - static_cast<double>(t[j]);
        slack_strong = std::min(slack_strong, s2);
        if (s2 < 0)
          c.require(false, s2, "stronger neighbour bound violated",
                    [&] { return make_witness("aligned", fam, t, 0.0); });
      }
    }
  }
  c.value("aligned_structures_checked", static_cast<double>(checked));
  if (checked == 0) return c.skip("no structure has maximum entry n+1");
  c.value("min_slack_sum", slack_sum);
  c.value("min_slack_strong", slack_strong);
  c.require(true, std::min(slack_sum, slack_strong), "");
  return c.finish();
}

PerNResult check_discard(CatalogStore& store, std::size_t n, const CheckOptions& opt) {
  Checker c(n, opt);
  const auto& cat = store.catalog(n);
  const auto& mu = store.mu1(n);
  const auto fam = cat.family();
  const double ceiling = static_cast<double>(n + 2);
  std::size_t arg = cat.size(), checked = 0;
  double signless_max = 0.0;
  for (std::size_t i = 0; i < cat.size(); ++i) {
    if (max_byte(cat.keys()[i]) > n + 1) continue;
    ++checked;
    if (arg == cat.size() || mu[i] > mu[arg]) arg = i;
    const double slack = ceiling + opt.tol.equality - mu[i];
    if (slack < 0)
      c.require(false, slack, "mu1 above n+2",
                [&] { return make_witness("above-ceiling", fam, cat.d(i), mu[i]); });
    // The proof bounds diag(d) + A; check that route too.
    const DVector d = cat.d(i);
    const double sl = eigenvalues(signless_generalized_laplacian(fam, d.view())).largest();
    signless_max = std::max(signless_max, sl);
    if (ceiling + opt.tol.equality - sl < 0)
      c.require(false, ceiling + opt.tol.equality - sl, "mu1(diag(d) + A) above n+2",
                [&] { return make_witness("signless-above-ceiling", fam, d, mu[i]); });
  }
  c.value("structures_checked", static_cast<double>(checked));
  if (arg == cat.size()) return c.skip("no structure with all entries <= n+1");
  c.value("max_mu1", mu[arg]);
  c.value("max_signless_mu1", signless_max);
  c.require(true, ceiling - mu[arg], "");
  c.witness(make_witness("largest", fam, cat.d(arg), mu[arg]));
  return c.finish();
}

PerNResult check_max(CatalogStore& store, std::size_t n, const CheckOptions& opt) {
  Checker c(n, opt);
  const auto fam = GraphFamily::cycle(n);
  const DVector a = max_family_a(n);
  const double nn = static_cast<double>(n);
  const double mu_a = family_mu1(fam, a, opt);
  c.value("mu1_max_family", mu_a);
  auto wa = [&] { return make_witness("max-family", fam, a, mu_a); };

  if (n <= store.exhaustive_cap()) {
    const auto& cat = store.catalog(n);
    const auto& mu = store.mu1(n);
    const CanonicalKey key_a = canonical_key(FamilyKind::Cycle, a);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < cat.size(); ++i)
      if (mu[i] > mu[arg]) arg = i;
    c.require(canonical_key(FamilyKind::Cycle, cat.d(arg)) == key_a, 0.0,
              "argmax is outside the orbit of (1,n+2,2,...,2)",
              [&] { return make_witness("argmax", fam, cat.d(arg), mu[arg]); });
    double runner = -std::numeric_limits<double>::infinity();
    std::size_t runner_i = cat.size();
    for (std::size_t i = 0; i < cat.size(); ++i) {
      if (canonical_key(FamilyKind::Cycle, cat.d(i)) == key_a) continue;
      if (mu[i] > runner) { runner = mu[i]; runner_i = i; }
    }
    if (runner_i < cat.size()) {
      const double gap = mu[arg] - runner - opt.tol.strict_margin;
      c.require(gap >= 0, gap, "argmax orbit not unique",
                [&] { return make_witness("runner-up", fam, cat.d(runner_i), runner); });
      c.value("mu1_runner_up", runner);
      c.witness(make_witness("runner-up", fam, cat.d(runner_i), runner));
    }
    c.witness(make_witness("argmax", fam, cat.d(arg), mu[arg]));
  } else {
    c.note("families-only mode");
  }

  // mu1(M) > mu1(M^(k)) >= n+2
  if (n >= 4) {
    std::vector<double> mk(n - 3);
    for (std::size_t k = 0; k + 4 <= n; ++k) mk[k] = family_mu1(fam, max_family_b(n, k), opt);
    double worst_gap = std::numeric_limits<double>::infinity();
    double worst_floor = std::numeric_limits<double>::infinity();
    double worst_sym = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 4 <= n; ++k) {
      const double gap = mu_a - mk[k] - opt.tol.strict_margin;
      worst_gap = std::min(worst_gap, gap);
      if (gap < 0)
        c.require(false, gap, "mu1(M) not above mu1(M^(k))",
                  [&] { return make_witness("d^k", fam, max_family_b(n, k), mk[k]); });
      const double floor = mk[k] - (nn + 2.0) + opt.tol.equality;
      worst_floor = std::min(worst_floor, floor);
      if (floor < 0)
        c.require(false, floor, "mu1(M^(k)) below n+2",
                  [&] { return make_witness("d^k", fam, max_family_b(n, k), mk[k]); });
      const double sym = opt.tol.equality - std::abs(mk[k] - mk[n - 4 - k]);
      worst_sym = std::min(worst_sym, sym);
      if (sym < 0)
        c.require(false, sym, "mu1(M^(k)) != mu1(M^(n-4-k))",
                  [&] { return make_witness("d^k", fam, max_family_b(n, k), mk[k]); });
    }
    c.value("min_gap_over_k", worst_gap + opt.tol.strict_margin);
    c.value("max_mu1_dk", *std::max_element(mk.begin(), mk.end()));
    c.require(true, worst_gap, "");
  }

  const double excess = mu_a - (nn + 2.0);
  c.value("excess_over_n_plus_2", excess);
  c.value("upper_bound_24_over_n", 24.0 / nn);
  c.require(excess - opt.tol.strict_margin >= 0, excess - opt.tol.strict_margin,
            "mu1(M) not above n+2", wa);
  c.require(excess <= 24.0 / nn, 24.0 / nn - excess, "mu1(M) above n+2+24/n", wa);
  c.require(mu_a <= nn + 4.0, nn + 4.0 - mu_a, "mu1(M) above n+4", wa);
  return c.finish();
}

PerNResult check_eigvec_bounds(std::size_t n, std::size_t k, const CheckOptions& opt) {
  Checker c(n, opt);
  if (n < 7) return c.skip("outside hypothesis n >= 7; n <= 6 is settled by exhaustive tables");
  if (k > n - 4) throw Error(ErrorCode::InvalidArgument, "k must be <= n-4");
  const auto fam = GraphFamily::cycle(n);
  const DVector dk = max_family_b(n, k);
  const EigenPair ep = family_top_eigenpair(fam, dk, opt);
  const auto& x = ep.vector;
  const double nn = static_cast<double>(n);
  const double tol = opt.tol.equality;
  const std::size_t three = k + 3;  // 0-based index of the entry d = 3
  auto w = [&] { return make_witness("d^k", fam, dk, ep.value); };

  c.value("mu1", ep.value);
  c.value("x2", x[1]);
  c.value("x3", x[2]);
  c.value("x_k_plus_4", x[three]);

  c.require(std::abs(std::abs(x[1]) - 1.0) <= tol, tol - std::abs(std::abs(x[1]) - 1.0),
            "|x_2| != 1", w);
  double worst_small = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 1 || i == three) continue;
    worst_small = std::min(worst_small, 2.0 / nn + tol - std::abs(x[i]));
  }
  c.require(worst_small >= 0, worst_small, "|x_i| > 2/n", w);
  const double up = 4.0 / (nn * (nn - 1.0));
  c.require(std::abs(x[three]) <= up + tol, up + tol - std::abs(x[three]),
            "|x_{k+4}| > 4/(n(n-1))", w);
  const double low = 1.0 / (nn + 1.0) - 2.0 / (nn * (nn + 3.0));
  c.require(std::abs(x[2]) >= low - tol, std::abs(x[2]) - low + tol, "|x_3| below lower bound", w);
  c.require(std::abs(x[2]) > std::abs(x[three]), std::abs(x[2]) - std::abs(x[three]),
            "|x_3| <= |x_{k+4}|", w);
  return c.finish();
}

PerNResult check_unit_vertex_n(CatalogStore& store, std::size_t n, const CheckOptions& opt) {
  Checker c(n, opt);
  if (n < 4) return c.skip("outside hypothesis n >= 4");
  const auto& cat = store.catalog(n);
  const auto rep = check_unit_vertex(cat);
  c.value("non_laplacian_checked", static_cast<double>(rep.checked));
  for (const auto& d : rep.counterexamples)
    c.require(false, -1.0, "no isolated unit vertex",
              [&] { return make_witness("counterexample", cat.family(), d, 0.0); });
  c.require(true, 0.0, "");
  return c.finish();
}

namespace {

struct TheoremName {
  TheoremId id;
  const char* name;
};

constexpr TheoremName kNames[] = {
    {TheoremId::Min, "min"},           {TheoremId::NonLapGt4, "nonlap-gt4"},
    {TheoremId::LemmaM, "lemma-M"},    {TheoremId::D313, "d313"},
    {TheoremId::DBound, "d-bound"},    {TheoremId::Families, "families"},
    {TheoremId::DStar, "d-star"},      {TheoremId::Discard, "discard"},
    {TheoremId::Max, "max"},           {TheoremId::EigVec, "eigvec"},
    {TheoremId::UnitVertex, "unit-vertex"},
};

}  // namespace

const char* to_string(TheoremId id) noexcept {
  for (const auto& t : kNames)
    if (t.id == id) return t.name;
  return "unknown";
}

std::optional<TheoremId> parse_theorem_id(const std::string& s) {
  for (const auto& t : kNames)
    if (s == t.name) return t.id;
  return std::nullopt;
}

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = [] {
    std::vector<TheoremId> v;
    for (const auto& t : kNames) v.push_back(t.id);
    return v;
  }();
  return ids;
}

VerificationReport run_check(TheoremId id, std::size_t n_lo, std::size_t n_hi,
                             CatalogStore& store, const CheckOptions& opt) {
  if (n_lo < 3 || n_hi < n_lo)
    throw Error(ErrorCode::InvalidArgument, "n range must satisfy 3 <= a <= b");
  VerificationReport rep{to_string(id), n_lo, n_hi, {}, opt.tol};
  for (std::size_t n = n_lo; n <= n_hi; ++n) {
    switch (id) {
      case TheoremId::Min: rep.per_n.push_back(check_min(store, n, opt)); break;
      case TheoremId::NonLapGt4: rep.per_n.push_back(check_nonlap_gt4(store, n, opt)); break;
      case TheoremId::LemmaM: rep.per_n.push_back(check_lemma_M(n, opt)); break;
      case TheoremId::D313: rep.per_n.push_back(check_313(n, opt)); break;
      case TheoremId::DBound: rep.per_n.push_back(check_d_bound(store, n, opt)); break;
      case TheoremId::Families: rep.per_n.push_back(check_families(store, n, opt)); break;
      case TheoremId::DStar: rep.per_n.push_back(check_dstar(store, n, opt)); break;
      case TheoremId::Discard: rep.per_n.push_back(check_discard(store, n, opt)); break;
      case TheoremId::Max: rep.per_n.push_back(check_max(store, n, opt)); break;
      case TheoremId::UnitVertex: rep.per_n.push_back(check_unit_vertex_n(store, n, opt)); break;
      case TheoremId::EigVec: {
        if (n < 7) {
          rep.per_n.push_back(check_eigvec_bounds(n, 0, opt));
          break;
        }
        // Fold every k into one entry per n.
        PerNResult merged{n, Verdict::Pass, std::nullopt, {}, {}, {}};
        for (std::size_t k = 0; k + 4 <= n; ++k) {
          auto r = check_eigvec_bounds(n, k, opt);
          if (r.margin) merged.margin = merged.margin ? std::min(*merged.margin, *r.margin) : *r.margin;
          if (r.verdict == Verdict::Fail) {
            merged.verdict = Verdict::Fail;
            for (auto& w : r.witnesses) merged.witnesses.push_back(std::move(w));
            merged.note += (merged.note.empty() ? "" : "; ") + ("k=" + std::to_string(k) + ": " + r.note);
          }
        }
        merged.values["k_checked"] = static_cast<double>(n - 3);
        rep.per_n.push_back(std::move(merged));
        break;
      }
    }
  }
  return rep;
}

}  // namespace arith
