#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "arith/cli.hpp"
#include "arith/error.hpp"
#include "arith/transforms.hpp"

namespace arith::cli {

using nlohmann::json;

namespace {

bool is_digit(unsigned char ch) { return std::isdigit(ch) != 0; }

json d_to_json(const DVector& d) { return json(d.entries); }

DVector d_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidArgument, "expected an integer array");
  std::vector<std::uint64_t> v;
  for (const auto& e : j) {
    if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() > 0))
      throw Error(ErrorCode::InvalidArgument, "d entries must be positive integers");
    v.push_back(e.get<std::uint64_t>());
  }
  return DVector(std::move(v));
}

FamilyKind parse_graph(const std::string& g) {
  if (g == "cycle") return FamilyKind::Cycle;
  if (g == "path") return FamilyKind::Path;
  throw Error(ErrorCode::InvalidArgument, "unknown graph '" + g + "'");
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

CatalogRecord make_record(const ArithmeticalStructure& s, std::optional<double> mu1,
                          std::optional<std::size_t> orbit_size) {
  return {to_string(s.family().kind), s.size(),          s.d(), s.r().to_strings(), mu1,
          canonical_key(s).d,         orbit_size};
}

json to_json(const CatalogRecord& rec) {
  json j;
  j["graph"] = rec.graph;
  j["n"] = rec.n;
  j["d"] = d_to_json(rec.d);
  j["r"] = rec.r;
  if (rec.mu1) j["mu1"] = *rec.mu1;
  j["canonical"] = d_to_json(rec.canonical);
  if (rec.orbit_size) j["orbit_size"] = *rec.orbit_size;
  return j;
}

CatalogRecord record_from_json(const json& j) {
  try {
    CatalogRecord rec;
    rec.graph = j.at("graph").get<std::string>();
    parse_graph(rec.graph);
    rec.n = j.at("n").get<std::size_t>();
    rec.d = d_from_json(j.at("d"));
    for (const auto& e : j.at("r")) {
      const auto s = e.get<std::string>();
      if (s.empty() || !std::all_of(s.begin(), s.end(), is_digit))
        throw Error(ErrorCode::InvalidArgument, "r entries must be decimal strings");
      rec.r.push_back(s);
    }
    if (j.contains("mu1")) rec.mu1 = j.at("mu1").get<double>();
    rec.canonical = d_from_json(j.at("canonical"));
    if (j.contains("orbit_size")) rec.orbit_size = j.at("orbit_size").get<std::size_t>();
    return rec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed catalog record: ") + e.what());
  }
}

bool record_is_consistent(const CatalogRecord& rec) {
  try {
    const GraphFamily fam{parse_graph(rec.graph), rec.n};
    if (!fam.valid() || rec.d.size() != rec.n || rec.r.size() != rec.n) return false;
    std::vector<mpz_class> r;
    for (const auto& s : rec.r) r.emplace_back(s, 10);
    const ArithmeticalStructure s(fam, rec.d, RVector(std::move(r)));
    return validate(s) && canonical_key(s).d == rec.canonical;
  } catch (const std::exception&) {
    return false;
  }
}

std::string csv_header() { return "n,d,r,mu1,orbit_size"; }

std::string to_csv_row(const CatalogRecord& rec) {
  std::vector<std::string> d;
  for (auto v : rec.d.entries) d.push_back(std::to_string(v));
  std::ostringstream os;
  os << rec.n << ",\"" << join(d, ';') << "\",\"" << join(rec.r, ';') << "\",";
  if (rec.mu1) {
    os.precision(17);
    os << *rec.mu1;
  }
  os << ',';
  if (rec.orbit_size) os << *rec.orbit_size;
  return os.str();
}

void write_catalog_jsonl(std::ostream& os, const StructureCatalog& catalog) {
  for (std::size_t i = 0; i < catalog.size(); ++i)
    os << to_json(make_record(catalog.structure(i))).dump() << '\n';
}

std::optional<StructureCatalog> read_catalog_jsonl(std::istream& is, GraphFamily family) {
  std::vector<PackedD> keys;
  std::string line;
  try {
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const auto rec = record_from_json(json::parse(line));
      if (rec.graph != to_string(family.kind) || rec.n != family.n) return std::nullopt;
      if (!record_is_consistent(rec)) return std::nullopt;
      keys.push_back(pack(rec.d));
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  const std::size_t read = keys.size();
  StructureCatalog cat(family, std::move(keys));
  if (cat.size() != read) return std::nullopt;  // duplicates
  // A truncated cycle file would otherwise pass record-by-record validation.
  if (family.kind == FamilyKind::Cycle && cat.size() != binomial(2 * family.n - 1, family.n - 1))
    return std::nullopt;
  return cat;
}

std::string cache_file_name(GraphFamily family) {
  return std::string(to_string(family.kind)) + "_n" + std::to_string(family.n) + ".jsonl";
}

std::optional<CatalogCache> CatalogCache::resolve(const std::string& flag_value) {
  if (!flag_value.empty()) return CatalogCache(flag_value);
  if (const char* env = std::getenv(kCacheEnvVar); env && *env) return CatalogCache(env);
  return std::nullopt;
}

std::filesystem::path CatalogCache::path_for(GraphFamily family) const {
  return dir_ / cache_file_name(family);
}

std::optional<StructureCatalog> CatalogCache::load(GraphFamily family) const {
  std::ifstream in(path_for(family));
  if (!in) return std::nullopt;
  return read_catalog_jsonl(in, family);
}

void CatalogCache::store(const StructureCatalog& catalog) const {
  std::filesystem::create_directories(dir_);
  const auto target = path_for(catalog.family());
  auto tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    write_catalog_jsonl(out, catalog);
    out.flush();
    if (!out) throw Error(ErrorCode::InvalidArgument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

json to_json(const Tolerances& t) {
  return {{"strict_margin", t.strict_margin},
          {"equality", t.equality},
          {"table", t.table},
          {"jacobi_relative", t.jacobi_relative}};
}

json to_json(const Witness& w) {
  json j{{"role", w.role}, {"d", d_to_json(w.d)}, {"r", w.r}, {"mu1", w.mu1}};
  return j;
}

json to_json(const PerNResult& r) {
  json j;
  j["n"] = r.n;
  j["verdict"] = to_string(r.verdict);
  j["margin"] = r.margin ? json(*r.margin) : json(nullptr);
  j["witnesses"] = json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(to_json(w));
  j["values"] = json::object();
  for (const auto& [k, v] : r.values) j["values"][k] = v;
  j["note"] = r.note;
  return j;
}

json to_json(const VerificationReport& rep) {
  json j;
  j["theorem_id"] = rep.theorem_id;
  j["n_range"] = {rep.n_lo, rep.n_hi};
  j["verdict"] = rep.pass() ? "pass" : "fail";
  j["per_n"] = json::array();
  for (const auto& r : rep.per_n) j["per_n"].push_back(to_json(r));
  j["tolerances"] = to_json(rep.tolerances);
  return j;
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.role = j.at("role").get<std::string>();
  w.d = d_from_json(j.at("d"));
  w.r = j.at("r").get<std::vector<std::string>>();
  w.mu1 = j.at("mu1").get<double>();
  return w;
}

PerNResult per_n_from_json(const json& j) {
  PerNResult r;
  r.n = j.at("n").get<std::size_t>();
  const auto v = j.at("verdict").get<std::string>();
  r.verdict = v == "pass" ? Verdict::Pass : v == "fail" ? Verdict::Fail : Verdict::Skipped;
  if (!j.at("margin").is_null()) r.margin = j.at("margin").get<double>();
  for (const auto& w : j.at("witnesses")) r.witnesses.push_back(witness_from_json(w));
  for (const auto& [k, v2] : j.at("values").items()) r.values[k] = v2.get<double>();
  r.note = j.at("note").get<std::string>();
  return r;
}

VerificationReport report_from_json(const json& j) {
  VerificationReport rep;
  rep.theorem_id = j.at("theorem_id").get<std::string>();
  rep.n_lo = j.at("n_range").at(0).get<std::size_t>();
  rep.n_hi = j.at("n_range").at(1).get<std::size_t>();
  for (const auto& r : j.at("per_n")) rep.per_n.push_back(per_n_from_json(r));
  const auto& t = j.at("tolerances");
  rep.tolerances.strict_margin = t.at("strict_margin").get<double>();
  rep.tolerances.equality = t.at("equality").get<double>();
  rep.tolerances.table = t.at("table").get<double>();
  rep.tolerances.jacobi_relative = t.at("jacobi_relative").get<double>();
  return rep;
}

json report_document(const std::string& command, const std::vector<VerificationReport>& reports,
                     const json& environment) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command;
  doc["reports"] = json::array();
  for (const auto& r : reports) doc["reports"].push_back(to_json(r));
  doc["environment"] = environment;
  return doc;
}

std::optional<std::pair<std::size_t, std::size_t>> parse_range(const std::string& s) {
  auto parse_one = [](const std::string& t) -> std::optional<std::size_t> {
    if (t.empty() || t.size() > 9 || !std::all_of(t.begin(), t.end(), is_digit)) return std::nullopt;
    return static_cast<std::size_t>(std::stoul(t));
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    auto v = parse_one(s);
    if (!v) return std::nullopt;
    return std::make_pair(*v, *v);
  }
  auto a = parse_one(s.substr(0, dots)), b = parse_one(s.substr(dots + 2));
  if (!a || !b || *a > *b) return std::nullopt;
  return std::make_pair(*a, *b);
}

std::optional<DVector> parse_d_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }), item.end());
    if (item.empty() || item.size() > 18 || !std::all_of(item.begin(), item.end(), is_digit))
      return std::nullopt;
    const auto v = std::stoull(item);
    if (v == 0) return std::nullopt;
    out.push_back(v);
  }
  if (out.empty() || (!s.empty() && s.back() == ',')) return std::nullopt;
  return DVector(std::move(out));
}

}  // namespace arith::cli
