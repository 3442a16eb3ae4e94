#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bmx/catalog.hpp"
#include "bmx/errors.hpp"
#include "bmx/extremal.hpp"
#include "bmx/graphs.hpp"
#include "bmx/matroid.hpp"
#include "bmx/matroid_io.hpp"
#include "bmx/morphism.hpp"
#include "bmx/verify.hpp"

namespace bmx {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "bmx/1";

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string format = "text";
  std::string cache_dir;
  bool timings = false;

  bool as_json() const { return format == "json"; }

  void emit(json j) const {
    j["schema"] = kSchema;
    out << j.dump(2) << "\n";
  }

  std::optional<Catalog> catalog() const {
    return Catalog::locate(cache_dir.empty() ? std::nullopt : std::optional(cache_dir));
  }
};

json matroid_json(const Matroid& m) {
  return {{"dim", m.dim()}, {"size", m.size()}, {"compact", to_compact(m)}};
}

std::string map_text(const LinearMap& map) {
  std::ostringstream s;
  for (int j = 0; j < map.domain_dim(); ++j) {
    s << "  e" << (j + 1) << " -> ";
    const Word v = map.images()[j];
    for (int i = 0; i < map.codomain_dim(); ++i) s << (((v >> i) & 1U) ? '1' : '0');
    s << "\n";
  }
  return s.str();
}

json map_json(const LinearMap& map) {
  json images = json::array();
  for (Word v : map.images()) {
    std::string col;
    for (int i = 0; i < map.codomain_dim(); ++i) col.push_back(((v >> i) & 1U) ? '1' : '0');
    images.push_back(col);
  }
  return {{"domain_dim", map.domain_dim()}, {"codomain_dim", map.codomain_dim()},
          {"images", images}};
}

std::vector<Matroid> load_all(const std::vector<std::string>& paths) {
  std::vector<Matroid> out;
  for (const auto& p : paths) out.push_back(load_matroid(p));
  return out;
}

json certificate_output(const TuranCertificate& cert, const Context& ctx) {
  json j = certificate_to_json(cert, ctx.timings);
  return j;
}

void print_certificate(const TuranCertificate& cert, const Context& ctx, bool cached) {
  if (ctx.as_json()) {
    json j = certificate_output(cert, ctx);
    j["command"] = "ex";
    j["cached"] = cached;
    ctx.emit(j);
    return;
  }
  ctx.out << "ex = " << cert.value << " at n = " << cert.n << "\n";
  ctx.out << "method: " << cert.method << (cert.certified ? " (certified)" : " (NOT certified)")
          << "\n";
  ctx.out << "nodes: " << cert.nodes << "\n";
  if (ctx.timings) ctx.out << "elapsed_ms: " << cert.elapsed_ms << "\n";
  if (cached) ctx.out << "source: catalog\n";
  ctx.out << "family:\n";
  for (const auto& f : cert.family) ctx.out << "  " << f << "\n";
  ctx.out << "witness:\n" << to_bm1(cert.witness);
}

int cmd_construct(const Context& ctx, const std::string& kind, const std::string& input, int n,
                  int t, int m) {
  auto need = [&](int v, const char* flag) {
    if (v < 0) throw UsageError(std::string("construct ") + kind + " needs " + flag);
    return v;
  };
  Matroid result;
  if (kind == "pg") {
    result = pg(need(t, "--t"));
  } else if (kind == "ag") {
    result = ag(need(t, "--t"));
  } else if (kind == "bb") {
    result = bb(need(n, "--n"), need(t, "--t"));
  } else if (kind == "free") {
    result = free_matroid(need(t, "--t"));
  } else if (kind == "circuit") {
    result = circuit(need(m, "--m"));
  } else if (kind == "graphic") {
    if (input.empty()) throw UsageError("construct graphic needs a graph file");
    const auto graphs = parse_graphs(read_text(input));
    if (graphs.size() != 1) throw UsageError("construct graphic needs exactly one graph");
    result = graphic(graphs.front());
  } else if (kind == "lift") {
    if (input.empty()) throw UsageError("construct lift needs an inner matroid file");
    result = lift(load_matroid(input), need(n, "--n"), need(t, "--t"));
  } else {
    throw UsageError("unknown construction '" + kind + "'");
  }
  if (ctx.as_json()) {
    json j = matroid_json(result);
    j["command"] = "construct";
    ctx.emit(j);
  } else {
    ctx.out << to_bm1(result);
  }
  return kExitOk;
}

int cmd_stat(const Context& ctx, const std::string& path) {
  const Matroid m = load_matroid(path);
  const int rank = m.rank();
  const int c = chi(m);
  if (ctx.as_json()) {
    json j = matroid_json(m);
    j["command"] = "stat";
    j["rank"] = rank;
    j["chi"] = c;
    ctx.emit(j);
  } else {
    ctx.out << "dim " << m.dim() << "\nsize " << m.size() << "\nrank " << rank << "\nchi " << c
            << "\n";
  }
  return kExitOk;
}

int cmd_contains(const Context& ctx, const std::string& host_path, const std::string& pattern_path) {
  const Matroid host = load_matroid(host_path);
  const Matroid pattern = load_matroid(pattern_path);
  const auto emb = find_embedding(host, pattern);
  if (ctx.as_json()) {
    json j{{"command", "contains"}, {"result", emb.has_value()}};
    if (emb) {
      j["map"] = map_json(emb->map);
      j["image"] = emb->image;
    }
    ctx.emit(j);
  } else {
    ctx.out << (emb ? "true" : "false") << "\n";
    if (emb) ctx.out << "map:\n" << map_text(emb->map);
  }
  return emb ? kExitOk : kExitFalse;
}

int cmd_iso(const Context& ctx, const std::string& a_path, const std::string& b_path) {
  const bool result = isomorphic(load_matroid(a_path), load_matroid(b_path));
  if (ctx.as_json()) {
    ctx.emit({{"command", "iso"}, {"result", result}});
  } else {
    ctx.out << (result ? "true" : "false") << "\n";
  }
  return result ? kExitOk : kExitFalse;
}

int cmd_canon(const Context& ctx, const std::string& path) {
  const CanonicalKey key = canonical_key(load_matroid(path));
  if (ctx.as_json()) {
    ctx.emit({{"command", "canon"}, {"key", key.to_string()}, {"dim", key.dim}});
  } else {
    ctx.out << key.to_string() << "\n" << to_bm1(key.matroid());
  }
  return kExitOk;
}

int cmd_count(const Context& ctx, const std::string& host_path, const std::string& pattern_path) {
  const Matroid host = load_matroid(host_path);
  const Matroid pattern = load_matroid(pattern_path);
  const std::uint64_t count = count_restrictions(host, pattern);
  const int r = pattern.rank();
  // The count divided by 2^r and by (2^n)^r, the two normalizations in use.
  const double per_rank = static_cast<double>(count) / std::ldexp(1.0, r);
  const double per_dim = static_cast<double>(count) / std::ldexp(1.0, host.dim() * r);
  if (ctx.as_json()) {
    ctx.emit({{"command", "count-restrictions"},
              {"count", count},
              {"pattern_rank", r},
              {"alpha_over_2_pow_r", per_rank},
              {"alpha_over_2n_pow_r", per_dim}});
  } else {
    ctx.out << count << "\n";
    ctx.out << "count / 2^r(N)      = " << per_rank << "\n";
    ctx.out << "count / (2^n)^r(N)  = " << per_dim << "\n";
  }
  return kExitOk;
}

int cmd_decompose(const Context& ctx, const std::vector<std::string>& paths) {
  const Family family = Family::of(load_all(paths));
  auto catalog = ctx.catalog();
  std::vector<std::string> members;
  bool cached = false;
  if (catalog) {
    if (auto hit = catalog->get(catalog_key("decompose", family.key_strings(), 0))) {
      members = hit->members;
      cached = true;
    }
  }
  if (!cached) {
    members = decomposition_family(family).key_strings();
    if (catalog) {
      CatalogEntry e;
      e.kind = "decompose";
      e.family = family.key_strings();
      e.members = members;
      catalog->put(e);
    }
  }
  if (ctx.as_json()) {
    ctx.emit({{"command", "decompose"}, {"k", family.k()}, {"members", members},
              {"cached", cached}});
  } else {
    ctx.out << "# k = " << family.k() << ", " << members.size() << " member(s)\n";
    for (const auto& key : members) {
      ctx.out << "# " << key << "\n" << to_bm1(parse_compact(key)) << "\n";
    }
  }
  return kExitOk;
}

int cmd_ex(const Context& ctx, const std::vector<std::string>& paths, int n, double time_limit,
           int threads) {
  const Family family = Family::of(load_all(paths));
  auto catalog = ctx.catalog();
  const std::string key = catalog_key("ex", family.key_strings(), n);
  if (catalog) {
    if (auto hit = catalog->get(key); hit && hit->certificate && hit->certificate->certified) {
      print_certificate(*hit->certificate, ctx, true);
      return kExitOk;
    }
  }
  SearchOptions options;
  options.time_limit = time_limit;
  options.threads = threads;
  const TuranCertificate cert = ex_search(family, n, options);
  if (catalog && cert.certified) {
    CatalogEntry e;
    e.kind = "ex";
    e.family = cert.family;
    e.n = n;
    e.certificate = cert;
    catalog->put(e);
  }
  print_certificate(cert, ctx, false);
  return cert.certified ? kExitOk : kExitFalse;
}

int cmd_nearest(const Context& ctx, const std::string& path, int k) {
  const StabilityReport r = nearest_bose_burton(load_matroid(path), k);
  if (ctx.as_json()) {
    ctx.emit({{"command", "nearest-bb"},
              {"k", r.k},
              {"distance", r.distance},
              {"density", r.density},
              {"density_gap", r.density_gap},
              {"flat_parity_checks", r.flat.parity_checks()},
              {"nearest", to_compact(r.nearest)}});
  } else {
    ctx.out << "distance " << r.distance << "\n";
    ctx.out << "density " << r.density << "\n";
    ctx.out << "density_gap " << r.density_gap << "\n";
    ctx.out << "flat (parity checks):";
    for (Word a : r.flat.parity_checks()) {
      ctx.out << " ";
      for (int i = 0; i < r.input.dim(); ++i) ctx.out << (((a >> i) & 1U) ? '1' : '0');
    }
    ctx.out << "\nnearest:\n" << to_bm1(r.nearest);
  }
  return kExitOk;
}

std::string edges_text(const std::vector<SimpleGraph::Edge>& edges) {
  std::string s;
  for (auto [u, v] : edges) s += (s.empty() ? "" : " ") + std::to_string(u) + "-" + std::to_string(v);
  return s;
}

int cmd_graph(const Context& ctx, const std::string& mode, const std::string& path) {
  const auto graphs = parse_graphs(read_text(path));
  if (graphs.empty()) throw UsageError("no graphs in input");
  json results = json::array();
  int code = kExitOk;
  for (const auto& g : graphs) {
    json j{{"graph6", to_graph6(g)}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
    std::ostringstream text;
    text << to_graph6(g) << ":";
    if (mode == "chi") {
      const int c = chromatic_number(g);
      const int cm = chi(graphic(g));
      int log = 0;
      while ((1 << log) < c) ++log;
      j["chromatic_number"] = c;
      j["matroid_chi"] = cm;
      j["log_formula_holds"] = cm == log;
      text << " chromatic " << c << ", matroid chi " << cm
           << (cm == log ? ", log formula holds" : ", log formula FAILS");
      if (cm != log) code = kExitFalse;
    } else if (mode == "forest") {
      const int t = threshold_exponent(g);
      const auto cert = min_forest_drop(g, 1 << t);
      j["t"] = t;
      if (cert) {
        j["forest"] = edges_text(cert->forest);
        j["forest_size"] = cert->forest.size();
        j["chromatic_after"] = cert->chromatic_after;
        j["ell_bound"] = (1LL << std::max<int>(0, static_cast<int>(cert->forest.size()) - 1));
        text << " t " << t << ", forest {" << edges_text(cert->forest) << "} of size "
             << cert->forest.size() << " leaves chromatic " << cert->chromatic_after
             << ", ell < " << (1LL << std::max<int>(0, static_cast<int>(cert->forest.size()) - 1));
      } else {
        j["forest"] = nullptr;
        text << " t " << t << ", no forest lowers the chromatic number to " << (1 << t);
        code = kExitFalse;
      }
    } else if (mode == "cubic") {
      const CubicRemark r = cubic_remark_data(g);
      j["max_cut"] = r.max_cut;
      j["nu"] = r.nu;
      j["ell"] = r.ell;
      text << " max cut " << r.max_cut << ", nu " << r.nu << ", ell " << r.ell;
    } else {
      throw UsageError("graph mode must be chi, forest or cubic");
    }
    results.push_back(j);
    if (!ctx.as_json()) ctx.out << text.str() << "\n";
  }
  if (ctx.as_json()) ctx.emit({{"command", "graph " + mode}, {"graphs", results}});
  return code;
}

int cmd_verify(const Context& ctx, const std::vector<std::string>& names, int max_n, int threads) {
  VerifyOptions options;
  options.max_n = max_n;
  options.threads = threads;
  std::vector<std::string> selected = names;
  if (selected.size() == 1 && selected.front() == "all") selected = verify_suite_names();
  bool all_pass = true;
  json suites = json::array();
  for (const auto& name : selected) {
    const VerifySuite s = run_verify(name, options);
    all_pass = all_pass && s.pass();
    if (ctx.as_json()) {
      json rows = json::array();
      for (const auto& r : s.rows) {
        rows.push_back({{"check", r.check},
                        {"expected", r.expected},
                        {"observed", r.observed},
                        {"pass", r.pass}});
      }
      json j{{"suite", s.name}, {"pass", s.pass()}, {"rows", rows}};
      if (ctx.timings) j["elapsed_ms"] = s.elapsed_ms;
      suites.push_back(j);
      continue;
    }
    std::size_t width = 5;
    for (const auto& r : s.rows) width = std::max(width, r.check.size());
    ctx.out << "== " << s.name << " ==\n";
    ctx.out << std::left << std::setw(static_cast<int>(width)) << "check"
            << "  result  expected  observed\n";
    for (const auto& r : s.rows) {
      ctx.out << std::left << std::setw(static_cast<int>(width)) << r.check << "  "
              << (r.pass ? "PASS  " : "FAIL  ") << "  " << r.expected << "  " << r.observed << "\n";
    }
    ctx.out << s.name << ": " << (s.pass() ? "PASS" : "FAIL");
    if (ctx.timings) ctx.out << " (" << std::fixed << std::setprecision(1) << s.elapsed_ms << " ms)";
    ctx.out << "\n";
  }
  if (ctx.as_json()) ctx.emit({{"command", "verify"}, {"pass", all_pass}, {"suites", suites}});
  return all_pass ? kExitOk : kExitFalse;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx{out, err};
  CLI::App app{"Binary matroid extremal toolkit", "bmx"};
  app.require_subcommand(1);
  app.add_option("--format", ctx.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--cache-dir", ctx.cache_dir, "Result catalog directory (default: $BMX_CACHE)");
  app.add_flag("--timings", ctx.timings, "Include wall-clock timings in output");

  std::function<int()> action;

  std::string kind, input;
  int n = -1, t = -1, m = -1;
  auto* construct = app.add_subcommand("construct", "Build a standard matroid; prints BM1");
  construct->add_option("kind", kind, "pg | ag | bb | free | circuit | graphic | lift")->required();
  construct->add_option("input", input, "Graph file (graphic) or inner matroid (lift)");
  construct->add_option("--n", n, "Ambient dimension");
  construct->add_option("--t", t, "Rank or order");
  construct->add_option("--m", m, "Circuit size");
  construct->callback([&] { action = [&] { return cmd_construct(ctx, kind, input, n, t, m); }; });

  std::string file_a, file_b;
  auto* stat = app.add_subcommand("stat", "Print dim, size, rank and chi");
  stat->add_option("file", file_a)->required();
  stat->callback([&] { action = [&] { return cmd_stat(ctx, file_a); }; });

  auto* contains_cmd = app.add_subcommand("contains", "Does host contain pattern as a restriction");
  contains_cmd->add_option("host", file_a)->required();
  contains_cmd->add_option("pattern", file_b)->required();
  contains_cmd->callback([&] { action = [&] { return cmd_contains(ctx, file_a, file_b); }; });

  auto* iso = app.add_subcommand("iso", "Are two matroids isomorphic");
  iso->add_option("a", file_a)->required();
  iso->add_option("b", file_b)->required();
  iso->callback([&] { action = [&] { return cmd_iso(ctx, file_a, file_b); }; });

  auto* canon = app.add_subcommand("canon", "Canonical key");
  canon->add_option("file", file_a)->required();
  canon->callback([&] { action = [&] { return cmd_canon(ctx, file_a); }; });

  auto* count = app.add_subcommand("count-restrictions", "Count distinct restrictions");
  count->add_option("host", file_a)->required();
  count->add_option("pattern", file_b)->required();
  count->callback([&] { action = [&] { return cmd_count(ctx, file_a, file_b); }; });

  std::vector<std::string> files;
  auto* decompose = app.add_subcommand("decompose", "Decomposition family of a family");
  decompose->add_option("files", files)->required();
  decompose->callback([&] { action = [&] { return cmd_decompose(ctx, files); }; });

  int search_n = -1;
  double time_limit = 0;
  int threads = 1;
  auto* ex = app.add_subcommand("ex", "Exact Turán number by search");
  ex->add_option("files", files)->required();
  ex->add_option("--n", search_n, "Dimension")->required();
  ex->add_option("--time-limit", time_limit, "Seconds; 0 means none");
  ex->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  ex->callback([&] { action = [&] { return cmd_ex(ctx, files, search_n, time_limit, threads); }; });

  int order = 1;
  auto* nearest = app.add_subcommand("nearest-bb", "Closest Bose–Burton geometry");
  nearest->add_option("file", file_a)->required();
  nearest->add_option("--k", order, "Order (codimension of the removed flat)");
  nearest->callback([&] { action = [&] { return cmd_nearest(ctx, file_a, order); }; });

  std::string mode;
  auto* graph = app.add_subcommand("graph", "Graph computations");
  graph->add_option("mode", mode, "chi | forest | cubic")
      ->required()
      ->check(CLI::IsMember({"chi", "forest", "cubic"}));
  graph->add_option("file", file_a, "graph6 lines or an edge list")->required();
  graph->callback([&] { action = [&] { return cmd_graph(ctx, mode, file_a); }; });

  std::vector<std::string> suites;
  int max_n = 5;
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  std::vector<std::string> allowed = verify_suite_names();
  allowed.push_back("all");
  verify->add_option("suites", suites, "Suite names or 'all'")
      ->required()
      ->check(CLI::IsMember(allowed));
  verify->add_option("--max-n", max_n, "Largest searched dimension");
  verify->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  verify->callback([&] { action = [&] { return cmd_verify(ctx, suites, max_n, threads); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action();
  } catch (const CapacityError& e) {
    err << "bmx: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const ParseError& e) {
    err << "bmx: parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "bmx: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "bmx: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace bmx
