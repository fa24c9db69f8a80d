#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "arith/enumeration.hpp"
#include "arith/graph_core.hpp"
#include "arith/theorems.hpp"

namespace arith::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
  kCapExceeded = 3,
  kInvalidStructure = 4,
};

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kCacheEnvVar = "ARITH_CACHE_DIR";

// One line of a catalog file.
struct CatalogRecord {
  std::string graph;  // "cycle" | "path"
  std::size_t n = 0;
  DVector d;
  std::vector<std::string> r;  // decimal strings
  std::optional<double> mu1;
  DVector canonical;
  std::optional<std::size_t> orbit_size;

  friend bool operator==(const CatalogRecord&, const CatalogRecord&) = default;
};

CatalogRecord make_record(const ArithmeticalStructure& s, std::optional<double> mu1 = {},
                          std::optional<std::size_t> orbit_size = {});
nlohmann::json to_json(const CatalogRecord& rec);
// Throws Error{InvalidArgument} on a malformed record.
CatalogRecord record_from_json(const nlohmann::json& j);
// True iff d and r validate and canonical is the orbit key of d.
bool record_is_consistent(const CatalogRecord& rec);

std::string csv_header();
std::string to_csv_row(const CatalogRecord& rec);

void write_catalog_jsonl(std::ostream& os, const StructureCatalog& catalog);
// Reads and validates every record; nullopt if anything is inconsistent or
// the file does not describe `family`.
std::optional<StructureCatalog> read_catalog_jsonl(std::istream& is, GraphFamily family);

std::string cache_file_name(GraphFamily family);

class CatalogCache {
 public:
  explicit CatalogCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  // Explicit flag wins over the environment; nullopt when neither is set.
  static std::optional<CatalogCache> resolve(const std::string& flag_value);

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path path_for(GraphFamily family) const;
  std::optional<StructureCatalog> load(GraphFamily family) const;
  // Write-temp-then-rename.
  void store(const StructureCatalog& catalog) const;

 private:
  std::filesystem::path dir_;
};

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const PerNResult& r);
nlohmann::json to_json(const VerificationReport& rep);
nlohmann::json to_json(const Tolerances& t);
Witness witness_from_json(const nlohmann::json& j);
PerNResult per_n_from_json(const nlohmann::json& j);
VerificationReport report_from_json(const nlohmann::json& j);

nlohmann::json report_document(const std::string& command,
                               const std::vector<VerificationReport>& reports,
                               const nlohmann::json& environment);

// Parses "a..b" or a single integer.
std::optional<std::pair<std::size_t, std::size_t>> parse_range(const std::string& s);
// Parses "1,8,2,2"; nullopt on any malformed or non-positive entry.
std::optional<DVector> parse_d_list(const std::string& s);

// Entry point for the `arith` tool. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arith::cli
