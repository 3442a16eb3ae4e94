#pragma once

// On-disk store of certified results.
//
// Layout: <root>/<h[0:2]>/<h[2:4]>/<h>.json where h is the 64-bit FNV-1a hash
// (16 hex digits) of the entry's key material. Entries that fail
// re-verification are moved to <root>/quarantine/ next to a .txt diagnostic.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bmx/extremal.hpp"

namespace bmx {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct CatalogEntry {
  std::string kind;                 // "ex" or "decompose"
  std::vector<std::string> family;  // sorted compact canonical keys
  int n = 0;                        // search dimension; 0 for "decompose"
  std::optional<TuranCertificate> certificate;  // kind "ex"
  std::vector<std::string> members;             // kind "decompose"
  std::string created_at;
  std::string version = kToolkitVersion;
};

/// Hash of (kind, n, family) as 16 lowercase hex digits.
std::string catalog_key(const std::string& kind, const std::vector<std::string>& family, int n);
std::string catalog_key(const CatalogEntry& entry);

nlohmann::json certificate_to_json(const TuranCertificate& cert, bool with_timing = true);
/// Throws ParseError (offset 0) on missing or malformed fields.
TuranCertificate certificate_from_json(const nlohmann::json& j);

nlohmann::json entry_to_json(const CatalogEntry& entry);
CatalogEntry entry_from_json(const nlohmann::json& j);

/// Independent re-check of an entry's payload; a diagnostic on failure.
std::optional<std::string> verify_entry(const CatalogEntry& entry);

struct CatalogReport {
  std::size_t checked = 0;
  /// (entry path, diagnostic) for each failure.
  std::vector<std::pair<std::string, std::string>> failures;
};

class Catalog {
 public:
  explicit Catalog(std::filesystem::path root);

  /// Root from an explicit flag value, else BMX_CACHE, else none.
  static std::optional<Catalog> locate(const std::optional<std::string>& flag);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path path_for(const std::string& key) const;

  /// Writes atomically (temp file + rename) and returns the key. An existing
  /// entry that still verifies is left untouched.
  std::string put(CatalogEntry entry);

  /// The stored entry if present and valid; invalid entries are quarantined.
  std::optional<CatalogEntry> get(const std::string& key);

  /// Re-verifies every stored entry; failures are listed and, if
  /// `move_failures` is set, quarantined.
  CatalogReport verify_all(bool move_failures = true);

 private:
  std::optional<std::string> check_file(const std::filesystem::path& path,
                                        const std::string& expected_key,
                                        std::optional<CatalogEntry>* out);
  void quarantine(const std::filesystem::path& path, const std::string& diagnostic);

  std::filesystem::path root_;
};

}  // namespace bmx
