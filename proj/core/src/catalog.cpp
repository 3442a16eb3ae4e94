#include "bmx/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "bmx/errors.hpp"
#include "bmx/matroid_io.hpp"

namespace bmx {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string key_material(const std::string& kind, const std::vector<std::string>& family, int n) {
  std::string out = kind + "|" + std::to_string(n);
  for (const auto& f : family) out += "|" + f;
  return out;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <class T>
T field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ParseError(std::string("missing field '") + name + "'", 0);
  }
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + name + "' has the wrong type", 0);
  }
}

}  // namespace

std::string catalog_key(const std::string& kind, const std::vector<std::string>& family, int n) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(key_material(kind, family, n))));
  return buf;
}

std::string catalog_key(const CatalogEntry& entry) {
  return catalog_key(entry.kind, entry.family, entry.n);
}

json certificate_to_json(const TuranCertificate& cert, bool with_timing) {
  json j;
  j["family"] = cert.family;
  j["n"] = cert.n;
  j["value"] = cert.value;
  j["witness"] = to_compact(cert.witness);
  j["method"] = cert.method;
  j["certified"] = cert.certified;
  j["nodes"] = cert.nodes;
  if (with_timing) j["elapsed_ms"] = cert.elapsed_ms;
  return j;
}

TuranCertificate certificate_from_json(const json& j) {
  TuranCertificate cert;
  cert.family = field<std::vector<std::string>>(j, "family");
  cert.n = field<int>(j, "n");
  cert.value = field<int>(j, "value");
  cert.witness = parse_compact(field<std::string>(j, "witness"));
  cert.method = field<std::string>(j, "method");
  cert.certified = field<bool>(j, "certified");
  cert.nodes = field<std::uint64_t>(j, "nodes");
  cert.elapsed_ms = j.contains("elapsed_ms") ? field<double>(j, "elapsed_ms") : 0.0;
  return cert;
}

json entry_to_json(const CatalogEntry& entry) {
  json j;
  if (entry.certificate) j = certificate_to_json(*entry.certificate);
  j["kind"] = entry.kind;
  j["family"] = entry.family;
  j["n"] = entry.n;
  if (entry.kind == "decompose") j["members"] = entry.members;
  j["key"] = key_material(entry.kind, entry.family, entry.n);
  j["created_at"] = entry.created_at;
  j["version"] = entry.version;
  return j;
}

CatalogEntry entry_from_json(const json& j) {
  CatalogEntry e;
  e.kind = field<std::string>(j, "kind");
  e.family = field<std::vector<std::string>>(j, "family");
  e.n = field<int>(j, "n");
  e.created_at = field<std::string>(j, "created_at");
  e.version = field<std::string>(j, "version");
  if (field<std::string>(j, "key") != key_material(e.kind, e.family, e.n)) {
    throw ParseError("stored key material does not match the entry", 0);
  }
  if (e.kind == "ex") {
    e.certificate = certificate_from_json(j);
  } else if (e.kind == "decompose") {
    e.members = field<std::vector<std::string>>(j, "members");
  } else {
    throw ParseError("unknown entry kind '" + e.kind + "'", 0);
  }
  return e;
}

std::optional<std::string> verify_entry(const CatalogEntry& entry) {
  try {
    if (entry.kind == "ex") {
      if (!entry.certificate) return "missing certificate";
      const auto& cert = *entry.certificate;
      if (cert.family != entry.family || cert.n != entry.n) {
        return "certificate does not match the entry key";
      }
      return verify_certificate(cert);
    }
    if (entry.kind == "decompose") {
      std::vector<Matroid> members;
      for (const auto& f : entry.family) members.push_back(parse_compact(f));
      const Family family = Family::of(std::move(members));
      if (family.key_strings() != entry.family) return "family keys are not canonical";
      if (decomposition_family(family).key_strings() != entry.members) {
        return "stored decomposition family differs from recomputation";
      }
      return std::nullopt;
    }
    return "unknown entry kind '" + entry.kind + "'";
  } catch (const std::exception& e) {
    return std::string("verification failed: ") + e.what();
  }
}

Catalog::Catalog(fs::path root) : root_(std::move(root)) {}

std::optional<Catalog> Catalog::locate(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return Catalog(*flag);
  if (const char* env = std::getenv("BMX_CACHE"); env != nullptr && *env != '\0') {
    return Catalog(env);
  }
  return std::nullopt;
}

fs::path Catalog::path_for(const std::string& key) const {
  return root_ / key.substr(0, 2) / key.substr(2, 2) / (key + ".json");
}

std::string Catalog::put(CatalogEntry entry) {
  const std::string key = catalog_key(entry);
  const fs::path path = path_for(key);
  if (fs::exists(path) && !check_file(path, key, nullptr)) return key;

  if (entry.created_at.empty()) entry.created_at = utc_now();
  fs::create_directories(path.parent_path());
  static std::atomic<unsigned> counter{0};
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid()) + "." +
                       std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("catalog: cannot write " + tmp.string());
    out << entry_to_json(entry).dump(2) << "\n";
    if (!out.flush()) throw UsageError("catalog: write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
  return key;
}

std::optional<std::string> Catalog::check_file(const fs::path& path,
                                               const std::string& expected_key,
                                               std::optional<CatalogEntry>* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "cannot open entry";
  std::stringstream buf;
  buf << in.rdbuf();
  CatalogEntry entry;
  try {
    entry = entry_from_json(json::parse(buf.str()));
  } catch (const json::exception& e) {
    return std::string("malformed JSON: ") + e.what();
  } catch (const std::exception& e) {
    return std::string("malformed entry: ") + e.what();
  }
  if (catalog_key(entry) != expected_key) return "entry stored under the wrong key";
  if (auto diag = verify_entry(entry)) return diag;
  if (out != nullptr) *out = std::move(entry);
  return std::nullopt;
}

void Catalog::quarantine(const fs::path& path, const std::string& diagnostic) {
  const fs::path dir = root_ / "quarantine";
  fs::create_directories(dir);
  const fs::path target = dir / path.filename();
  std::error_code ec;
  fs::rename(path, target, ec);
  std::ofstream note(dir / (path.stem().string() + ".txt"), std::ios::trunc);
  note << path.string() << ": " << diagnostic << "\n";
}

std::optional<CatalogEntry> Catalog::get(const std::string& key) {
  const fs::path path = path_for(key);
  if (!fs::exists(path)) return std::nullopt;
  std::optional<CatalogEntry> entry;
  if (auto diag = check_file(path, key, &entry)) {
    quarantine(path, *diag);
    return std::nullopt;
  }
  return entry;
}

CatalogReport Catalog::verify_all(bool move_failures) {
  CatalogReport report;
  if (!fs::exists(root_)) return report;
  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(root_); it != fs::recursive_directory_iterator();
       ++it) {
    if (it->is_directory() && it->path().filename() == "quarantine") {
      it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file() && it->path().extension() == ".json") files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    ++report.checked;
    if (auto diag = check_file(path, path.stem().string(), nullptr)) {
      report.failures.emplace_back(path.string(), *diag);
      if (move_failures) quarantine(path, *diag);
    }
  }
  return report;
}

}  // namespace bmx
