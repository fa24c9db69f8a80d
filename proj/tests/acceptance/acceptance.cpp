// Acceptance run: one PASS/FAIL line per criterion, details indented below.
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "arith/cli.hpp"
#include "arith/enumeration.hpp"
#include "arith/error.hpp"
#include "arith/spectra.hpp"
#include "arith/theorems.hpp"
#include "arith/transforms.hpp"

using namespace arith;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void fail(std::string why) {
    pass = false;
    details.push_back(std::move(why));
  }
  void note(std::string s) { details.push_back(std::move(s)); }
};

std::string fmt(double x, int prec = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << x;
  return os.str();
}

CatalogStore& store() {
  static CatalogStore s(10);
  return s;
}

double cycle_mu(const DVector& d) { return spectral_radius(GraphFamily::cycle(d.size()), d.view()); }

void absorb(Outcome& o, const PerNResult& r, const std::string& label) {
  if (r.verdict == Verdict::Fail) {
    std::string w;
    if (!r.witnesses.empty()) w = " witness " + format_vector(r.witnesses.front().d.view());
    o.fail(label + " n=" + std::to_string(r.n) + ": " + r.note + w);
  }
}

// ---------------------------------------------------------------------------

Outcome counting_law() {
  Outcome o;
  const std::uint64_t want[] = {10, 35, 126, 462, 1716, 6435, 24310, 92378, 352716, 1352078};
  for (std::size_t n = 3; n <= 12; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto cat = enumerate_cycle(n, 12);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cat.size() != want[n - 3])
      o.fail("n=" + std::to_string(n) + ": " + std::to_string(cat.size()) + " structures");
    if (n == 12) {
      o.note("n=12 enumerated in " + fmt(secs, 1) + " s");
      if (secs >= 120) o.fail("n=12 took longer than 120 s");
    }
  }
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto bf = brute_force_cycle(n, n + 4);
    const auto en = enumerate_cycle(n);
    std::vector<PackedD> diff;
    std::set_symmetric_difference(bf.keys().begin(), bf.keys().end(), en.keys().begin(),
                                  en.keys().end(), std::back_inserter(diff));
    if (!diff.empty()) o.fail("n=" + std::to_string(n) + ": symmetric difference " + std::to_string(diff.size()));
  }
  return o;
}

struct TableEntry {
  DVector d;
  double subscript;
};

// The published table of d-vectors up to symmetry with rounded mu_1.
const std::map<std::size_t, std::vector<TableEntry>>& published_table() {
  static const std::map<std::size_t, std::vector<TableEntry>> t = {
      {3, {{{2, 2, 2}, 3.00}, {{3, 3, 1}, 4.00}, {{1, 5, 2}, 5.41}}},
      {4,
       {{{2, 2, 2, 2}, 4.00},
        {{3, 2, 3, 1}, 4.41},
        {{4, 3, 2, 1}, 5.00},
        {{4, 1, 4, 1}, 5.00},
        {{5, 3, 1, 2}, 5.73},
        {{6, 1, 3, 1}, 6.41},
        {{1, 6, 2, 2}, 6.45}}},
      {5,
       {{{2, 2, 2, 2, 2}, 3.62},
        {{3, 2, 2, 3, 1}, 4.00},
        {{1, 4, 1, 3, 3}, 4.62},
        {{1, 4, 2, 3, 2}, 4.73},
        {{4, 3, 3, 1, 2}, 5.00},
        {{1, 4, 4, 1, 3}, 5.24},
        {{5, 1, 2, 4, 1}, 5.49},
        {{3, 5, 1, 2, 2}, 5.64},
        {{5, 3, 2, 1, 3}, 5.76},
        {{1, 2, 2, 5, 4}, 5.87},
        {{2, 1, 4, 1, 6}, 6.43},
        {{6, 2, 1, 3, 2}, 6.47},
        {{1, 3, 6, 1, 3}, 6.49},
        {{3, 1, 7, 1, 2}, 7.33},
        {{1, 7, 2, 2, 2}, 7.35}}},
      {6,
       {{{2, 2, 2, 2, 2, 2}, 4.00}, {{3, 2, 2, 2, 3, 1}, 4.30}, {{3, 3, 1, 3, 3, 1}, 4.56},
        {{3, 2, 3, 1, 4, 1}, 4.73}, {{4, 2, 2, 3, 2, 1}, 4.76}, {{4, 2, 3, 3, 1, 2}, 4.90},
        {{4, 2, 4, 1, 3, 1}, 5.00}, {{4, 3, 1, 4, 2, 1}, 5.00}, {{4, 1, 4, 1, 4, 1}, 5.00},
        {{4, 3, 3, 2, 1, 3}, 5.16}, {{4, 3, 4, 1, 2, 2}, 5.22}, {{4, 4, 1, 4, 1, 2}, 5.33},
        {{3, 3, 1, 5, 1, 2}, 5.50}, {{5, 2, 3, 2, 2, 1}, 5.56}, {{5, 1, 4, 3, 1, 2}, 5.58},
        {{5, 2, 1, 5, 2, 1}, 5.65}, {{5, 3, 3, 1, 3, 1}, 5.68}, {{5, 1, 5, 1, 3, 1}, 5.68},
        {{5, 3, 2, 3, 1, 2}, 5.71}, {{1, 2, 3, 5, 3, 3}, 5.82}, {{5, 4, 1, 3, 2, 1}, 5.84},
        {{5, 4, 2, 1, 3, 2}, 5.91}, {{5, 3, 2, 2, 1, 4}, 5.95}, {{5, 4, 1, 3, 1, 3}, 5.95},
        {{5, 5, 1, 2, 2, 2}, 6.23}, {{4, 2, 1, 6, 1, 2}, 6.39}, {{6, 1, 4, 2, 2, 1}, 6.40},
        {{6, 1, 5, 1, 2, 2}, 6.45}, {{6, 2, 4, 1, 2, 2}, 6.48}, {{6, 2, 1, 5, 1, 2}, 6.48},
        {{6, 3, 2, 2, 2, 1}, 6.50}, {{6, 3, 2, 1, 4, 1}, 6.50}, {{6, 1, 4, 2, 1, 3}, 6.50},
        {{1, 2, 6, 3, 1, 4}, 6.53}, {{1, 2, 3, 2, 6, 3}, 6.54}, {{6, 4, 1, 2, 3, 1}, 6.61},
        {{7, 1, 4, 1, 3, 1}, 7.33}, {{7, 2, 3, 1, 3, 1}, 7.36}, {{2, 1, 7, 2, 1, 4}, 7.36},
        {{7, 1, 3, 3, 1, 2}, 7.36}, {{1, 2, 7, 2, 2, 3}, 7.39}, {{7, 3, 1, 3, 2, 1}, 7.40},
        {{8, 1, 3, 2, 2, 1}, 8.28}, {{8, 1, 2, 3, 2, 1}, 8.29}, {{1, 8, 2, 2, 2, 2}, 8.30}}},
  };
  return t;
}

Outcome table_reproduction() {
  Outcome o;
  const std::size_t orbits_want[] = {3, 7, 15, 45};
  std::size_t mismatches = 0, total = 0;
  for (const auto& [n, rows] : published_table()) {
    const auto cat = enumerate_cycle(n);
    const auto orbits = orbit_index(cat);
    if (orbits.size() != orbits_want[n - 3])
      o.fail("n=" + std::to_string(n) + ": " + std::to_string(orbits.size()) + " orbits");
    if (rows.size() != orbits.size()) o.fail("n=" + std::to_string(n) + ": table has " + std::to_string(rows.size()) + " rows");
    std::map<DVector, std::size_t> hits;
    for (const auto& o2 : orbits) hits[o2.key.d] = 0;
    for (const auto& row : rows) {
      ++total;
      if (!make_structure(GraphFamily::cycle(n), row.d)) {
        o.fail(format_vector(row.d.view()) + " is not a structure");
        continue;
      }
      const auto key = canonical_key(FamilyKind::Cycle, row.d).d;
      auto it = hits.find(key);
      if (it == hits.end()) {
        o.fail(format_vector(row.d.view()) + " lies in no computed orbit");
        continue;
      }
      ++it->second;
      const double mu = cycle_mu(row.d);
      if (std::abs(mu - row.subscript) > Tolerances{}.table) {
        ++mismatches;
        o.fail(format_vector(row.d.view()) + ": computed " + fmt(mu) + ", listed " + fmt(row.subscript, 2));
      }
    }
    for (const auto& [key, count] : hits)
      if (count != 1) o.fail(format_vector(key.view()) + " matched by " + std::to_string(count) + " rows");
  }
  o.note(std::to_string(total - mismatches) + "/" + std::to_string(total) + " subscripts within 0.005");
  return o;
}

Outcome minimum() {
  Outcome o;
  for (std::size_t n = 3; n <= 10; ++n) {
    const auto r = check_min(store(), n);
    absorb(o, r, "min");
    const double want = 2 - 2 * std::cos(2 * std::numbers::pi * static_cast<double>(n / 2) / static_cast<double>(n));
    if (std::abs(r.values.at("mu1_laplacian") - want) > 1e-9) o.fail("n=" + std::to_string(n) + ": Laplacian radius off");
    // Independent argmin scan over the catalog.
    const auto& mu = store().mu1(n);
    const auto& cat = store().catalog(n);
    const auto lap = cat.index_of(laplacian_structure(GraphFamily::cycle(n)).d()).value();
    for (std::size_t i = 0; i < cat.size(); ++i) {
      if (i == lap) continue;
      if (mu[i] < mu[lap] + 1e-9) o.fail("n=" + std::to_string(n) + ": " + format_vector(cat.d(i).view()) + " ties the minimum");
      if (n >= 6 && mu[i] < 4 + 1e-9) o.fail("n=" + std::to_string(n) + ": " + format_vector(cat.d(i).view()) + " not above 4");
    }
    if (n >= 6) absorb(o, check_nonlap_gt4(store(), n), "nonlap-gt4");
  }
  return o;
}

Outcome maximum() {
  Outcome o;
  for (std::size_t n = 3; n <= 10; ++n) {
    const auto r = check_max(store(), n);
    absorb(o, r, "max");
    const auto& mu = store().mu1(n);
    const auto& cat = store().catalog(n);
    const auto key = canonical_key(FamilyKind::Cycle, max_family_a(n)).d;
    const double top = cycle_mu(max_family_a(n));
    const double nn = static_cast<double>(n);
    if (!(top > nn + 2 + 1e-9 && top <= nn + 2 + 24 / nn)) o.fail("n=" + std::to_string(n) + ": mu(M)=" + fmt(top, 6) + " outside window");
    for (std::size_t i = 0; i < cat.size(); ++i)
      if (canonical_key(FamilyKind::Cycle, cat.d(i)).d != key && mu[i] >= top - 1e-9)
        o.fail("n=" + std::to_string(n) + ": " + format_vector(cat.d(i).view()) + " reaches the maximum");
    for (std::size_t k = 0; k + 4 <= n; ++k)
      if (cycle_mu(max_family_b(n, k)) >= top) o.fail("n=" + std::to_string(n) + ": d^" + std::to_string(k) + " not below M");
  }
  for (std::size_t n : {20u, 50u, 100u, 200u, 500u}) {
    const auto r = check_max(store(), n);
    absorb(o, r, "max");
    const double excess = r.values.at("excess_over_n_plus_2");
    if (!(excess > 0 && excess <= 24.0 / static_cast<double>(n)))
      o.fail("n=" + std::to_string(n) + ": excess " + fmt(excess, 6));
    o.note("n=" + std::to_string(n) + ": mu1 - (n+2) = " + fmt(excess, 6));
  }
  return o;
}

Outcome d_bound_and_families() {
  Outcome o;
  CheckOptions opt;
  opt.oracle_max_n = 8;
  for (std::size_t n = 3; n <= 9; ++n) {
    const auto r = check_d_bound(store(), n, opt);
    absorb(o, r, "d-bound");
    if (r.values.at("max_entry") != static_cast<double>(n + 2)) o.fail("n=" + std::to_string(n) + ": max entry not n+2");
    if (n <= 8 && r.values.at("oracle_max_entry") != static_cast<double>(n + 2))
      o.fail("n=" + std::to_string(n) + ": widened oracle disagrees");
    absorb(o, check_families(store(), n, opt), "families");

    // Independent set comparison.
    const auto& cat = store().catalog(n);
    std::set<DVector> attaining, expected;
    for (std::size_t i = 0; i < cat.size(); ++i)
      if (cat.d(i).max_entry() == n + 2) attaining.insert(canonical_key(FamilyKind::Cycle, cat.d(i)).d);
    expected.insert(canonical_key(FamilyKind::Cycle, max_family_a(n)).d);
    for (std::size_t k = 0; k + 4 <= n; ++k) {
      expected.insert(canonical_key(FamilyKind::Cycle, max_family_b(n, k)).d);
      if (canonical_key(FamilyKind::Cycle, max_family_b(n, k)) != canonical_key(FamilyKind::Cycle, max_family_b(n, n - 4 - k)))
        o.fail("n=" + std::to_string(n) + ": d^k and d^(n-4-k) differ");
    }
    // The single n = 3 orbit (1,5,2) is family (a) itself.
    if (attaining != expected) o.fail("n=" + std::to_string(n) + ": max-attaining orbits differ from the families");
  }
  return o;
}

Outcome lemmas() {
  Outcome o;
  for (std::size_t n = 5; n <= 50; ++n) {
    const auto r = check_lemma_M(n);
    absorb(o, r, "lemma-M");
    if (n == 5 && !(r.values.at("mu1") > 4.08)) o.fail("n=5 path matrix radius " + fmt(r.values.at("mu1")));
  }
  for (std::size_t n = 3; n <= 50; ++n) {
    const double mu = cycle_mu(d_313(n));
    if ((n == 3 || n == 5) && std::abs(mu - 4) > 1e-9) o.fail("(3,1,3,..) n=" + std::to_string(n) + ": " + fmt(mu, 10));
    if (n == 4 && std::abs(mu - 4.41421) > 1e-5) o.fail("(3,1,3,2): " + fmt(mu, 6));
    if (n >= 6 && !(mu > 4)) o.fail("(3,1,3,..) n=" + std::to_string(n) + ": " + fmt(mu, 10));
    absorb(o, check_313(n), "313");
  }
  for (std::size_t n = 6; n <= 9; ++n) absorb(o, check_dstar(store(), n), "dstar");
  for (std::size_t n = 3; n <= 9; ++n) {
    const auto r = check_discard(store(), n);
    absorb(o, r, "discard");
    // Independent: every structure with entries <= n+1 stays at or below n+2.
    const auto& cat = store().catalog(n);
    const auto& mu = store().mu1(n);
    for (std::size_t i = 0; i < cat.size(); ++i)
      if (cat.d(i).max_entry() <= n + 1 && mu[i] > static_cast<double>(n + 2) + 1e-9)
        o.fail("n=" + std::to_string(n) + ": " + format_vector(cat.d(i).view()) + " exceeds n+2");
  }
  return o;
}

Outcome eigensolver_oracle() {
  Outcome o;
  for (std::size_t n = 3; n <= 200; ++n) {
    const auto sp = eigenvalues(generalized_laplacian(GraphFamily::cycle(n), DVector(std::vector<std::uint64_t>(n, 2)).view()));
    std::vector<double> want;
    for (std::size_t j = 0; j < n; ++j)
      want.push_back(2 - 2 * std::cos(2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n)));
    std::sort(want.begin(), want.end(), std::greater<>());
    double worst = 0;
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(sp.eigenvalues[j] - want[j]));
    if (worst > 1e-9) o.fail("C_" + std::to_string(n) + ": deviation " + fmt(worst, 12));
  }
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> pick_n(3, 10);
  double worst_kernel = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto n = pick_n(rng);
    const auto& cat = store().catalog(n);
    const auto s = cat.structure(std::uniform_int_distribution<std::size_t>(0, cat.size() - 1)(rng));
    const double low = std::abs(eigenvalues(build_L(s)).smallest());
    worst_kernel = std::max(worst_kernel, low);
    if (low > 1e-9) o.fail(format_vector(s.d().view()) + ": |mu_n| = " + fmt(low, 12));
    // Exact integer product.
    const auto& r = s.r().entries;
    for (std::size_t i = 0; i < n; ++i) {
      mpz_class v = r[i] * static_cast<unsigned long>(s.d()[i]) - r[(i + n - 1) % n] - r[(i + 1) % n];
      if (v != 0) o.fail(format_vector(s.d().view()) + ": L r != 0 at " + std::to_string(i));
    }
  }
  o.note("largest |mu_n| over the sample " + fmt(worst_kernel, 15));
  return o;
}

Outcome transform_properties() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> pick_n(3, 9);
  for (int t = 0; t < 1000; ++t) {
    const auto n = pick_n(rng);
    const auto& cat = store().catalog(n);
    const auto s = cat.structure(std::uniform_int_distribution<std::size_t>(0, cat.size() - 1)(rng));
    const auto e = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const auto sub = subdivide(s, e);
    if (!validate(sub) || !(smooth(sub, e + 1) == s))
      o.fail(format_vector(s.d().view()) + " edge " + std::to_string(e) + ": smooth(subdivide) differs");
    const auto key = canonical_key(s);
    for (const auto& g : dihedral_group(n)) {
      const auto img = apply(s, g);
      if (!validate(img) || canonical_key(img) != key)
        o.fail(format_vector(s.d().view()) + ": key not invariant");
    }
  }
  return o;
}

Outcome eigenvector_bounds() {
  Outcome o;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t n : {7u, 10u, 15u, 20u}) {
    const double nn = static_cast<double>(n);
    for (std::size_t k = 0; k + 4 <= n; ++k) {
      absorb(o, check_eigvec_bounds(n, k), "eigvec k=" + std::to_string(k));
      // Independent recomputation from the dense solver.
      const auto ep = top_eigenpair(generalized_laplacian(GraphFamily::cycle(n), max_family_b(n, k).view()));
      std::vector<double> x = ep.vector;
      const double scale = x[1];
      for (auto& v : x) v /= scale;
      const std::size_t three = k + 3;  // 0-based position of the entry 3
      for (std::size_t i = 0; i < n; ++i) {
        if (i == 1 || i == three) continue;
        worst = std::min(worst, 2 / nn + 1e-9 - std::abs(x[i]));
      }
      worst = std::min(worst, 4 / (nn * (nn - 1)) + 1e-9 - std::abs(x[three]));
      worst = std::min(worst, std::abs(x[2]) - (1 / (nn + 1) - 2 / (nn * (nn + 3))) + 1e-9);
      if (!(std::abs(x[2]) > std::abs(x[three]))) o.fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": |x_3| <= |x_{k+4}|");
    }
  }
  if (worst < 0) o.fail("a bound is violated by " + fmt(-worst, 12));
  o.note("smallest slack " + fmt(worst, 6));
  return o;
}

std::vector<std::string> csv_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);)
    if (!l.empty()) out.push_back(l);
  return out;
}

Outcome open_sequences() {
  Outcome o;
  std::ostringstream out, err;
  if (cli::run({"count", "--graph", "cycle", "--n-range", "3..10", "--up-to-symmetry"}, out, err) != 0) {
    o.fail("cycle count failed: " + err.str());
    return o;
  }
  const auto rows = csv_lines(out.str());
  std::vector<std::string> seq;
  for (std::size_t i = 1; i < rows.size(); ++i) seq.push_back(rows[i].substr(rows[i].find(',') + 1));
  if (rows.size() != 9 || rows[0] != "n,count") o.fail("unexpected cycle count output");
  const std::vector<std::string> head = {"3", "7", "15", "45"};
  if (seq.size() < 4 || !std::equal(head.begin(), head.end(), seq.begin())) o.fail("sequence does not begin 3, 7, 15, 45");
  std::string joined;
  for (const auto& s : seq) joined += (joined.empty() ? "" : ", ") + s;
  o.note("cycles up to symmetry, n=3..10: " + joined);
  for (std::size_t n = 3; n <= 10; ++n) {
    const auto orbits = orbit_index(store().catalog(n));
    if (std::to_string(orbits.size()) != seq.at(n - 3)) o.fail("n=" + std::to_string(n) + ": count disagrees with orbit index");
    for (const auto& orb : orbits)
      if ((2 * n) % orb.members.size() != 0) o.fail("n=" + std::to_string(n) + ": orbit size does not divide 2n");
  }

  std::ostringstream pout, perr;
  if (cli::run({"count", "--graph", "path", "--n-range", "2..7"}, pout, perr) != 0) {
    o.fail("path count failed: " + perr.str());
    return o;
  }
  const auto prow = csv_lines(pout.str());
  if (prow.size() != 7 || prow[0] != "n,count,search_bound_hit") o.fail("unexpected path count output");
  std::string pj;
  for (std::size_t i = 1; i < prow.size(); ++i) {
    const auto c1 = prow[i].find(','), c2 = prow[i].rfind(',');
    const auto flag = prow[i].substr(c2 + 1);
    if (flag != "true" && flag != "false") o.fail("missing search-bound flag: " + prow[i]);
    pj += (pj.empty() ? "" : ", ") + prow[i].substr(c1 + 1, c2 - c1 - 1) + (flag == "true" ? "*" : "");
  }
  o.note("paths, n=2..7: " + pj);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "counting law", counting_law},
      {2, "oracle equivalence", oracle_equivalence},
      {3, "table reproduction", table_reproduction},
      {4, "minimum", minimum},
      {5, "maximum", maximum},
      {6, "d-bound and families", d_bound_and_families},
      {7, "lemmas", lemmas},
      {8, "eigensolver oracle", eigensolver_oracle},
      {9, "transform properties", transform_properties},
      {10, "eigenvector bounds", eigenvector_bounds},
      {11, "open-question sequences", open_sequences},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " (" << fmt(secs, 1) << " s)\n";
    const std::size_t shown = std::min<std::size_t>(o.details.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) std::cout << "    " << o.details[i] << "\n";
    if (o.details.size() > shown) std::cout << "    ... " << o.details.size() - shown << " more\n";
    std::cout.flush();
    if (!o.pass) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return failed == 0 ? 0 : 1;
}
