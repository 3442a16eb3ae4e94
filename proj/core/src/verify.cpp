#include "bmx/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>

#include "bmx/errors.hpp"
#include "bmx/extremal.hpp"
#include "bmx/graphs.hpp"
#include "bmx/matroid.hpp"
#include "bmx/matroid_io.hpp"
#include "bmx/morphism.hpp"

namespace bmx {

bool VerifySuite::pass() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
}

namespace {

std::string str(long long v) { return std::to_string(v); }
std::string yes_no(bool b) { return b ? "true" : "false"; }

void add(VerifySuite& s, std::string check, std::string expected, std::string observed) {
  const bool pass = expected == observed;
  s.rows.push_back({std::move(check), std::move(expected), std::move(observed), pass});
}

SearchOptions search_options(const VerifyOptions& o) {
  SearchOptions s;
  s.threads = o.threads;
  return s;
}

void bose_burton(VerifySuite& s, const VerifyOptions& o) {
  for (int t = 1; t <= 3; ++t) {
    for (int n = t + 1; n <= std::min(o.max_n, kMaxSearchDim); ++n) {
      if (t == 3 && n > 4) continue;
      const auto cert = ex_search(Family::of({pg(t + 1)}), n, search_options(o));
      const std::string tag = "t=" + str(t) + " n=" + str(n);
      add(s, "ex(pg(" + str(t + 1) + ")) " + tag, str((1LL << n) - (1LL << (n - t))),
          str(cert.value));
      add(s, "witness ~ bb " + tag, "true", yes_no(isomorphic(cert.witness, bb(n, t))));
    }
  }
}

void octahedron(VerifySuite& s, const VerifyOptions& o) {
  const Family f = Family::of({graphic(SimpleGraph::octahedron())});
  const Family d = decomposition_family(f);
  const Family expected = Family::of({free_matroid(4), circuit(4)});
  std::string observed;
  for (const auto& key : d.key_strings()) observed += (observed.empty() ? "" : " ") + key;
  std::string want;
  for (const auto& key : expected.key_strings()) want += (want.empty() ? "" : " ") + key;
  add(s, "decomposition family = {I4, C4}", want, observed);
  add(s, "ex(D, 3)", "4", str(ex_search(d, 3, search_options(o)).value));
  const LiftBound lb = maintech_rhs(f, 6, search_options(o));
  add(s, "lift bound at n=6", "36", str(lb.value));
  add(s, "lift witness avoids M(O6)", "true", yes_no(lb.witness_free));
}

void cliques(VerifySuite& s, const VerifyOptions& o) {
  for (int t = 3; t <= 6; ++t) {
    const Family f = Family::of({graphic(SimpleGraph::complete(t))});
    const CliqueConstant cc = clique_constant(t);
    const Family d = decomposition_family(f);
    const auto inner = ex_search(d, 3, search_options(o));
    add(s, "K" + str(t) + " constant ex(D, 3)", str(cc.value), str(inner.value));
    const LiftBound lb = maintech_rhs(f, cc.t0 + 3, search_options(o));
    add(s, "K" + str(t) + " lift witness at n=" + str(cc.t0 + 3) + " is free", "true",
        yes_no(lb.witness_free));
  }
}

void critical_edge(VerifySuite& s, const VerifyOptions& o) {
  struct Case {
    std::string name;
    Matroid m;
    bool critical;
    bool formula;  // exact value known for every n >= dim
  };
  const std::vector<Case> cases = {
      {"triangle", circuit(3), true, true},
      {"pg(3)", pg(3), true, true},
      {"lift(point,3,2)", lift(free_matroid(1), 3, 2), true, true},
      {"circuit(5)", circuit(5), true, false},
      {"M(K4)", graphic(SimpleGraph::complete(4)), false, false},
  };
  for (const auto& c : cases) {
    const CriticalEdge ce = critical_edge_check(c.m);
    add(s, c.name + " has a critical element", yes_no(c.critical), yes_no(ce.critical));
    if (!c.formula) continue;
    for (int n = c.m.dim(); n <= std::min(o.max_n, kMaxSearchDim); ++n) {
      const long long want = (1LL << n) - (1LL << (n - ce.chi_before + 1));
      add(s, "ex(" + c.name + ") n=" + str(n), str(want),
          str(ex_search(Family::of({c.m}), n, search_options(o)).value));
    }
  }
}

void aes(VerifySuite& s, const VerifyOptions&) {
  const AesReport r = aes_check(4, 2);
  add(s, "triangle-free rank-4 sets larger than 5 are affine", "true", yes_no(r.holds));
  add(s, "largest triangle-free non-affine rank-4 set", "5", str(r.max_non_affine));
}

void chi_log(VerifySuite& s, const VerifyOptions&) {
  const long long counts[] = {0, 1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) {
    const auto graphs = connected_graphs(n);
    add(s, "connected graphs on " + str(n) + " vertices", str(counts[n]), str(graphs.size()));
    long long holds = 0;
    for (const auto& g : graphs) {
      const SimpleGraph h = parse_graph6(to_graph6(g));
      const int c = chromatic_number(h);
      int log = 0;
      while ((1 << log) < c) ++log;
      if (chi(graphic(h)) == log) ++holds;
    }
    add(s, "chi(M(G)) = ceil(log2 chi(G)) on " + str(n) + " vertices", str(graphs.size()),
        str(holds));
  }
}

const std::map<std::string, std::function<void(VerifySuite&, const VerifyOptions&)>>& suites() {
  static const std::map<std::string, std::function<void(VerifySuite&, const VerifyOptions&)>> s = {
      {"bose-burton", bose_burton}, {"octahedron", octahedron},
      {"cliques", cliques},         {"critical-edge", critical_edge},
      {"aes", aes},                 {"chi-log-formula", chi_log},
  };
  return s;
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"bose-burton", "octahedron", "cliques", "critical-edge", "aes", "chi-log-formula"};
}

VerifySuite run_verify(const std::string& name, const VerifyOptions& options) {
  auto it = suites().find(name);
  if (it == suites().end()) throw UsageError("unknown verify suite '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  VerifySuite s;
  s.name = name;
  it->second(s, options);
  s.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return s;
}

std::vector<SimpleGraph> connected_graphs(int n) {
  if (n < 1 || n > 6) throw CapacityError("connected_graphs: n must lie in [1, 6]");
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  const int m = static_cast<int>(pairs.size());
  std::map<std::pair<int, int>, int> index;
  for (int e = 0; e < m; ++e) index[pairs[e]] = e;

  // Edge permutation induced by every vertex permutation.
  std::vector<std::vector<int>> edge_perms;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> ep(m);
    for (int e = 0; e < m; ++e) {
      const int a = perm[pairs[e].first], b = perm[pairs[e].second];
      ep[e] = index[{std::min(a, b), std::max(a, b)}];
    }
    edge_perms.push_back(std::move(ep));
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto build = [&](std::uint32_t mask) {
    SimpleGraph g(n);
    for (int e = 0; e < m; ++e) {
      if ((mask >> e) & 1U) g.add_edge(pairs[e].first, pairs[e].second);
    }
    return g;
  };

  std::vector<std::uint32_t> reps;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << m); ++mask) {
    bool minimal = true;
    for (const auto& ep : edge_perms) {
      std::uint32_t image = 0;
      for (int e = 0; e < m; ++e) {
        if ((mask >> e) & 1U) image |= std::uint32_t{1} << ep[e];
      }
      if (image < mask) {
        minimal = false;
        break;
      }
    }
    if (minimal && build(mask).connected()) reps.push_back(mask);
  }
  std::vector<SimpleGraph> out;
  for (auto mask : reps) out.push_back(build(mask));
  return out;
}

}  // namespace bmx
