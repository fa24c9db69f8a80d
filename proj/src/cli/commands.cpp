#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"

#include "arith/cli.hpp"
#include "arith/error.hpp"
#include "arith/spectra.hpp"
#include "arith/transforms.hpp"

namespace arith::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string graph = "cycle";
  std::string cache;
};

FamilyKind graph_kind(const std::string& g) {
  if (g == "cycle") return FamilyKind::Cycle;
  if (g == "path") return FamilyKind::Path;
  throw UsageError("--graph must be 'cycle' or 'path'");
}

std::pair<std::size_t, std::size_t> range_from(const std::string& n, const std::string& range) {
  if (!n.empty() && !range.empty()) throw UsageError("use either --n or --n-range, not both");
  const std::string& s = n.empty() ? range : n;
  if (s.empty()) throw UsageError("--n or --n-range is required");
  auto r = parse_range(s);
  if (!r) throw UsageError("malformed n or range '" + s + "'");
  return *r;
}

void check_size(FamilyKind kind, std::size_t n) {
  const GraphFamily fam{kind, n};
  if (!fam.valid())
    throw UsageError(std::string(to_string(kind)) + " needs n >= " +
                     (kind == FamilyKind::Cycle ? "3" : "2") + ", got " + std::to_string(n));
}

struct Obtained {
  StructureCatalog catalog;
  std::optional<PathSearchResult> path_info;
  bool from_cache = false;
};

// Catalog for one graph, from the cache when it holds a valid file.
Obtained obtain_catalog(FamilyKind kind, std::size_t n, const std::optional<CatalogCache>& cache,
                        std::size_t cap, std::ostream& err) {
  const GraphFamily fam{kind, n};
  if (kind == FamilyKind::Cycle && n > cap)
    throw Error(ErrorCode::CapExceeded,
                "n = " + std::to_string(n) + " exceeds the enumeration cap " + std::to_string(cap));
  if (cache) {
    if (auto c = cache->load(fam)) return {std::move(*c), std::nullopt, true};
    if (std::filesystem::exists(cache->path_for(fam)))
      err << "warning: ignoring inconsistent cache file " << cache->path_for(fam) << '\n';
  }
  Obtained ob{kind == FamilyKind::Cycle ? enumerate_cycle(n, cap)
                                        : StructureCatalog(fam, {}),
              std::nullopt, false};
  if (kind == FamilyKind::Path) {
    auto res = enumerate_path(n);
    ob.catalog = res.catalog;
    ob.path_info = std::move(res);
  }
  if (cache) cache->store(ob.catalog);
  return ob;
}

std::string fixed2(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

std::string join_d(const DVector& d, char sep) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(d[i]);
  return s;
}

// ---------------------------------------------------------------- enumerate

struct EnumerateArgs {
  Common common;
  std::string n, range, format = "jsonl", out;
  bool up_to_symmetry = false;
  bool with_mu1 = false;
  std::size_t cap = kDefaultCycleCap;
};

int cmd_enumerate(const EnumerateArgs& a, std::ostream& out, std::ostream& err) {
  const auto kind = graph_kind(a.common.graph);
  const auto [lo, hi] = range_from(a.n, a.range);
  if (a.format != "jsonl" && a.format != "csv" && a.format != "md")
    throw UsageError("--format must be jsonl, csv or md");
  for (std::size_t n = lo; n <= hi; ++n) check_size(kind, n);
  const auto cache = CatalogCache::resolve(a.common.cache);

  std::unique_ptr<std::ofstream> file;
  if (!a.out.empty()) {
    file = std::make_unique<std::ofstream>(a.out, std::ios::trunc);
    if (!*file) throw UsageError("cannot open " + a.out);
  }
  std::ostream& sink = file ? *file : out;

  if (a.format == "csv") sink << csv_header() << '\n';
  if (a.format == "md") sink << "| n | d | r | mu1 | orbit_size |\n|---|---|---|---|---|\n";

  for (std::size_t n = lo; n <= hi; ++n) {
    auto ob = obtain_catalog(kind, n, cache, a.cap, err);
    const auto& cat = ob.catalog;
    const auto counts = count_orbits(cat);
    err << to_string(kind) << " n=" << n << ": " << counts.total << " structures, "
        << counts.up_to_symmetry << " up to symmetry";
    if (ob.path_info)
      err << " (search bound " << ob.path_info->search_bound
          << (ob.path_info->bound_hit ? ", bound hit" : ", bound not hit") << ")";
    if (ob.from_cache) err << " [cache]";
    err << '\n';

    auto emit = [&](const ArithmeticalStructure& s, std::optional<std::size_t> orbit_size) {
      std::optional<double> mu;
      if (a.with_mu1) mu = spectral_radius(s);
      const auto rec = make_record(s, mu, orbit_size);
      if (a.format == "jsonl") {
        sink << to_json(rec).dump() << '\n';
      } else if (a.format == "csv") {
        sink << to_csv_row(rec) << '\n';
      } else {
        sink << "| " << n << " | " << format_vector(rec.d.view()) << " | " << format_vector(s.r())
             << " | " << (mu ? fixed2(*mu) : "") << " | "
             << (orbit_size ? std::to_string(*orbit_size) : "") << " |\n";
      }
    };
    if (a.up_to_symmetry) {
      for (const auto& o : orbit_index(cat)) {
        auto s = make_structure(cat.family(), o.key.d);
        if (!s) throw Error(ErrorCode::InternalError, "canonical key is not a structure");
        emit(*s, o.members.size());
      }
    } else {
      for (std::size_t i = 0; i < cat.size(); ++i) emit(cat.structure(i), std::nullopt);
    }
  }
  return kSuccess;
}

// ------------------------------------------------------------------ spectra

struct SpectraArgs {
  Common common;
  std::string d;
  bool full = false;
  bool eigvec = false;
};

int cmd_spectra(const SpectraArgs& a, std::ostream& out, std::ostream& err) {
  const auto kind = graph_kind(a.common.graph);
  auto d = parse_d_list(a.d);
  if (!d) throw UsageError("--d must be a comma-separated list of positive integers");
  const GraphFamily fam{kind, d->size()};
  check_size(kind, fam.n);
  auto s = make_structure(fam, *d);
  if (!s) {
    err << "not an arithmetical structure: " << format_vector(d->view()) << " on the "
        << to_string(kind) << '\n';
    return kInvalidStructure;
  }
  const auto m = build_L(*s);
  const auto sp = eigenvalues(m);
  json j;
  j["graph"] = to_string(kind);
  j["n"] = fam.n;
  j["d"] = d->entries;
  j["r"] = s->r().to_strings();
  j["mu1"] = sp.largest();
  j["canonical"] = canonical_key(*s).d.entries;
  if (a.full) {
    j["eigenvalues"] = sp.eigenvalues;
    j["offdiag_residual"] = sp.offdiag_residual;
  }
  if (a.eigvec) {
    const auto ep = top_eigenpair(m);
    j["eigvec"] = {{"value", ep.value}, {"vector", ep.vector}, {"residual", ep.residual}};
  }
  out << j.dump(2) << '\n';
  return kSuccess;
}

// -------------------------------------------------------------------- table

struct TableArgs {
  Common common;
  std::string n;
  std::string format = "md";
  std::size_t cap = kDefaultCycleCap;
};

int cmd_table(const TableArgs& a, std::ostream& out, std::ostream& err) {
  auto r = parse_range(a.n);
  if (!r || r->first != r->second) throw UsageError("--n must be a single integer");
  const std::size_t n = r->first;
  check_size(FamilyKind::Cycle, n);
  if (a.format != "md" && a.format != "csv") throw UsageError("--format must be md or csv");
  const auto cache = CatalogCache::resolve(a.common.cache);
  auto ob = obtain_catalog(FamilyKind::Cycle, n, cache, a.cap, err);

  struct Row {
    DVector key;
    double mu1;
    std::size_t orbit_size;
  };
  std::vector<Row> rows;
  for (const auto& o : orbit_index(ob.catalog))
    rows.push_back({o.key.d, spectral_radius(GraphFamily::cycle(n), o.key.d.view()), o.members.size()});
  // Values within 1e-9 count as ties and fall back to the canonical key.
  std::sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    const auto qx = std::llround(x.mu1 * 1e9), qy = std::llround(y.mu1 * 1e9);
    if (qx != qy) return qx < qy;
    return x.key < y.key;
  });
  const std::size_t max_row = rows.empty() ? 0 : rows.size() - 1;
  err << "cycle n=" << n << ": " << rows.size() << " orbits, " << ob.catalog.size()
      << " structures\n";

  if (a.format == "md") {
    out << "| d | mu1 | orbit_size | max |\n|---|---|---|---|\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      out << "| " << format_vector(rows[i].key.view()) << " | " << fixed2(rows[i].mu1) << " | "
          << rows[i].orbit_size << " | " << (i == max_row ? "*" : "") << " |\n";
  } else {
    out << "n,d,mu1,orbit_size,max\n";
    for (std::size_t i = 0; i < rows.size(); ++i)
      out << n << ",\"" << join_d(rows[i].key, ';') << "\"," << fixed2(rows[i].mu1) << ','
          << rows[i].orbit_size << ',' << (i == max_row ? 1 : 0) << '\n';
  }
  return kSuccess;
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
  Common common;
  std::string theorem = "all";
  std::string range;
  std::size_t exhaustive_cap = 10;
  std::size_t oracle_max_n = 9;
  std::size_t dense_limit = 120;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<TheoremId> ids;
  if (a.theorem == "all") {
    ids = all_theorems();
  } else if (auto id = parse_theorem_id(a.theorem)) {
    ids.push_back(*id);
  } else {
    throw UsageError("unknown theorem '" + a.theorem + "'");
  }
  auto r = parse_range(a.range);
  if (!r) throw UsageError("--n-range is required (a..b)");
  if (r->first < 3) throw UsageError("--n-range must start at 3 or above");

  CheckOptions opt;
  opt.exhaustive_cap = a.exhaustive_cap;
  opt.oracle_max_n = a.oracle_max_n;
  opt.dense_limit = a.dense_limit;
  CatalogStore store(a.exhaustive_cap);
  if (auto cache = CatalogCache::resolve(a.common.cache)) {
    store.set_loader([cache](std::size_t n) { return cache->load(GraphFamily::cycle(n)); });
    store.set_saver([cache](const StructureCatalog& c) { cache->store(c); });
  }

  std::vector<VerificationReport> reports;
  bool ok = true;
  for (auto id : ids) {
    reports.push_back(run_check(id, r->first, r->second, store, opt));
    const auto& rep = reports.back();
    ok = ok && rep.pass();
    err << to_string(id) << ' ' << r->first << ".." << r->second << ": "
        << (rep.pass() ? "pass" : "FAIL") << '\n';
  }
  json env{{"tolerances", to_json(opt.tol)},
           {"exhaustive_cap", opt.exhaustive_cap},
           {"oracle_max_n", opt.oracle_max_n},
           {"dense_limit", opt.dense_limit},
           {"enumeration_cap", kDefaultCycleCap}};
  out << report_document("verify", reports, env).dump(2) << '\n';
  return ok ? kSuccess : kVerificationFailed;
}

// -------------------------------------------------------------------- count

struct CountArgs {
  Common common;
  std::string range;
  bool up_to_symmetry = false;
  std::size_t cap = kDefaultCycleCap;
};

int cmd_count(const CountArgs& a, std::ostream& out, std::ostream& err) {
  const auto kind = graph_kind(a.common.graph);
  auto r = parse_range(a.range);
  if (!r) throw UsageError("--n-range is required (a..b)");
  for (std::size_t n = r->first; n <= r->second; ++n) check_size(kind, n);
  const auto cache = CatalogCache::resolve(a.common.cache);
  out << (kind == FamilyKind::Path ? "n,count,search_bound_hit\n" : "n,count\n");
  for (std::size_t n = r->first; n <= r->second; ++n) {
    auto ob = obtain_catalog(kind, n, cache, a.cap, err);
    const auto counts = count_orbits(ob.catalog);
    out << n << ',' << (a.up_to_symmetry ? counts.up_to_symmetry : counts.total);
    if (kind == FamilyKind::Path) {
      // Cached path catalogs carry no search metadata; rerun the bound probe.
      const bool hit = ob.path_info ? ob.path_info->bound_hit : enumerate_path(n).bound_hit;
      out << ',' << (hit ? "true" : "false");
    }
    out << '\n';
  }
  return kSuccess;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::SizeTooSmall:
      return kUsageError;
    case ErrorCode::CapExceeded:
    case ErrorCode::CatalogMissing:
      return kCapExceeded;
    case ErrorCode::NonIntegralQuotient:
    case ErrorCode::SmoothAtNonUnit:
      return kInvalidStructure;
    default:
      return kVerificationFailed;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetical structures on cycle and path graphs", "arith"};
  app.require_subcommand(1);

  EnumerateArgs ea;
  auto* en = app.add_subcommand("enumerate", "Emit every structure (or one per orbit)");
  en->add_option("--graph", ea.common.graph, "cycle or path");
  en->add_option("--n", ea.n, "graph size");
  en->add_option("--n-range", ea.range, "sizes a..b");
  en->add_flag("--up-to-symmetry", ea.up_to_symmetry, "one canonical representative per orbit");
  en->add_option("--format", ea.format, "jsonl, csv or md");
  en->add_option("--out", ea.out, "write to this file instead of stdout");
  en->add_option("--cache", ea.common.cache, "catalog cache directory");
  en->add_flag("--mu1", ea.with_mu1, "include the spectral radius");
  en->add_option("--cap", ea.cap, "largest cycle size to enumerate");

  SpectraArgs sa;
  auto* sp = app.add_subcommand("spectra", "Spectral data for one d-vector");
  sp->add_option("--d", sa.d, "comma-separated d-vector")->required();
  sp->add_option("--graph", sa.common.graph, "cycle or path");
  sp->add_flag("--full", sa.full, "all eigenvalues");
  sp->add_flag("--eigvec", sa.eigvec, "top eigenpair");

  TableArgs ta;
  auto* tb = app.add_subcommand("table", "Orbits with spectral radii, ascending");
  tb->add_option("--n", ta.n, "cycle size")->required();
  tb->add_option("--format", ta.format, "md or csv");
  tb->add_option("--cache", ta.common.cache, "catalog cache directory");
  tb->add_option("--cap", ta.cap, "largest cycle size to enumerate");

  VerifyArgs va;
  auto* vf = app.add_subcommand("verify", "Run theorem checks and print a report");
  vf->add_option("--theorem", va.theorem,
                 "min|nonlap-gt4|lemma-M|d313|d-bound|families|d-star|discard|max|eigvec|"
                 "unit-vertex|all");
  vf->add_option("--n-range", va.range, "sizes a..b")->required();
  vf->add_option("--cache", va.common.cache, "catalog cache directory");
  vf->add_option("--exhaustive-cap", va.exhaustive_cap, "largest n for full-catalog checks");
  vf->add_option("--oracle-max-n", va.oracle_max_n, "largest n for the widened brute force");
  vf->add_option("--dense-limit", va.dense_limit, "largest order for dense Jacobi");

  CountArgs ca;
  auto* ct = app.add_subcommand("count", "Structure counts per n");
  ct->add_option("--graph", ca.common.graph, "cycle or path");
  ct->add_option("--n-range", ca.range, "sizes a..b")->required();
  ct->add_flag("--up-to-symmetry", ca.up_to_symmetry, "count orbits");
  ct->add_option("--cache", ca.common.cache, "catalog cache directory");
  ct->add_option("--cap", ca.cap, "largest cycle size to enumerate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kUsageError;
  }

  try {
    if (en->parsed()) return cmd_enumerate(ea, out, err);
    if (sp->parsed()) return cmd_spectra(sa, out, err);
    if (tb->parsed()) return cmd_table(ta, out, err);
    if (vf->parsed()) return cmd_verify(va, out, err);
    if (ct->parsed()) return cmd_count(ca, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsageError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"arith"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace arith::cli
