#include "bmx/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include "bmx/detail/embedding.hpp"
#include "bmx/errors.hpp"
#include "bmx/matroid_io.hpp"

namespace bmx {

Family Family::of(std::vector<Matroid> members) {
  if (members.empty()) throw UsageError("a family needs at least one member");
  std::map<CanonicalKey, Matroid> by_key;
  for (auto& m : members) {
    CanonicalKey key = canonical_key(m);
    by_key.emplace(std::move(key), std::move(m));
  }
  Family f;
  for (auto& [key, m] : by_key) {
    f.keys_.push_back(key);
    f.members_.push_back(std::move(m));
  }
  return f;
}

std::vector<std::string> Family::key_strings() const {
  std::vector<std::string> out;
  for (const auto& key : keys_) out.push_back(key.to_string());
  return out;
}

int Family::k() const {
  if (members_.empty()) throw UsageError("empty family");
  int best = -1;
  for (const auto& m : members_) {
    if (m.empty()) throw UsageError("family members must be nonempty");
    const int c = chi(m);
    if (best < 0 || c < best) best = c;
  }
  return best - 1;
}

Family decomposition_family(const Family& family) {
  const int k = family.k();
  if (k == 0) return family;

  std::map<CanonicalKey, Matroid> candidates;
  for (const auto& n : family.members()) {
    if (n.dim() > kMaxCanonDim) {
      throw CapacityError("decomposition family: member dimension exceeds " +
                          std::to_string(kMaxCanonDim));
    }
    if (k > n.dim()) continue;
    auto subspaces = enumerate_codim_subspaces(n.dim(), k);
    while (auto w = subspaces.next()) {
      Matroid slice = recoordinatize(intersect_flat(n, *w));
      if (slice.empty()) continue;
      CanonicalKey key = canonical_key(slice);
      candidates.emplace(std::move(key), std::move(slice));
    }
  }

  // Drop every candidate that has another candidate as a restriction.
  std::vector<Matroid> minimal;
  for (const auto& [key, d] : candidates) {
    bool is_minimal = true;
    for (const auto& [other_key, other] : candidates) {
      if (other_key == key) continue;
      if (other.size() <= d.size() && contains(d, other)) {
        is_minimal = false;
        break;
      }
    }
    if (is_minimal) minimal.push_back(d);
  }
  return Family::of(std::move(minimal));
}

namespace {

using Mask = std::uint64_t;

std::vector<Word> mask_points(Mask m) {
  std::vector<Word> out;
  while (m != 0) {
    out.push_back(static_cast<Word>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

Matroid mask_matroid(int n, Mask m) {
  const auto pts = mask_points(m);
  return Matroid::from_points(n, pts);
}

// A forbidden member with one anchored plan per orbit of its automorphism
// group on points: a new point x creates a copy iff some plan maps its anchor
// to x.
struct AnchoredPattern {
  std::vector<detail::PatternPlan> plans;
};

bool anchored_match(const detail::PatternPlan& plan, Mask host, Word x) {
  const auto points = mask_points(host);
  auto in_host = [host](Word v) { return v < 64 && ((host >> v) & 1U); };
  auto stop = [](const std::vector<Word>&) { return true; };
  detail::EmbeddingSearch search(plan, points, in_host, true, stop);
  return search.run(x);
}

AnchoredPattern anchor_pattern(const Matroid& n) {
  const auto points = n.points();
  std::vector<int> orbit(points.size(), -1);
  AnchoredPattern out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (orbit[i] >= 0) continue;
    orbit[i] = static_cast<int>(i);
    auto plan = detail::make_plan(n, points[i]);
    const auto host = n.points();
    auto in_host = [&n](Word v) { return n.has(v); };
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (orbit[j] >= 0) continue;
      auto stop = [](const std::vector<Word>&) { return true; };
      detail::EmbeddingSearch search(plan, host, in_host, true, stop);
      if (search.run(points[j])) orbit[j] = static_cast<int>(i);
    }
    out.plans.push_back(std::move(plan));
  }
  return out;
}

class TuranSearch {
 public:
  TuranSearch(const Family& family, int n, const SearchOptions& options)
      : n_(n), options_(options), start_(std::chrono::steady_clock::now()) {
    for (const auto& m : family.members()) {
      if (m.empty()) throw UsageError("ex: family members must be nonempty");
      if (m.dim() <= n) patterns_.push_back(anchor_pattern(m));
    }
  }

  TuranCertificate run() {
    const Mask all = n_ == 0 ? 0 : (~Mask{0} >> (64 - ((1 << n_) - 1))) << 1;

    // Isomorphism classes of free sets of size <= 3, level by level.
    std::vector<Mask> level{0};
    int level_size = 0;
    while (level_size < 3) {
      std::map<CanonicalKey, Mask> next;
      for (Mask s : level) {
        for (Word x : mask_points(all & ~s)) {
          if (creates_copy(s | (Mask{1} << x), x)) continue;
          const Matroid m = mask_matroid(n_, s | (Mask{1} << x));
          CanonicalKey key = canonical_key(m);
          if (next.count(key)) continue;
          Mask rep = 0;
          for (Word p : key.matroid().points()) rep |= Mask{1} << p;
          next.emplace(std::move(key), rep);
        }
      }
      if (next.empty()) break;
      level.clear();
      for (const auto& [key, rep] : next) level.push_back(rep);
      ++level_size;
    }

    // Tasks in sequential depth-first order: each seed alone, then the seed
    // plus its i-th compatible point with earlier ones excluded.
    struct Task {
      Mask cur;
      Mask cand;
    };
    std::vector<Task> tasks;
    for (Mask seed : level) {
      Mask cand = 0;
      for (Word y : mask_points(all & ~seed)) {
        if (!creates_copy(seed | (Mask{1} << y), y)) cand |= Mask{1} << y;
      }
      tasks.push_back({seed, 0});
      Mask rest = cand;
      while (rest != 0) {
        const Word x = static_cast<Word>(std::countr_zero(rest));
        rest &= rest - 1;
        const Mask cur = seed | (Mask{1} << x);
        tasks.push_back({cur, filter(rest, cur)});
      }
    }

    std::vector<Result> results(tasks.size());
    std::atomic<std::size_t> next_task{0};
    auto worker = [&] {
      while (true) {
        const std::size_t i = next_task.fetch_add(1);
        if (i >= tasks.size()) return;
        Worker w(*this);
        w.dfs(tasks[i].cur, std::popcount(tasks[i].cur), tasks[i].cand);
        results[i] = {w.best, w.witness, w.nodes};
      }
    };
    const int threads = std::max(1, options_.threads);
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    TuranCertificate cert;
    cert.n = n_;
    cert.method = "branch-bound";
    int best = -1;
    Mask witness = 0;
    for (const auto& r : results) {
      cert.nodes += r.nodes;
      if (r.best > best) {
        best = r.best;
        witness = r.witness;
      }
    }
    if (best < 0) {
      best = level_size;
      witness = level.front();
    }
    cert.value = best;
    cert.witness = mask_matroid(n_, witness);
    cert.certified = !stopped_.load();
    cert.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
    return cert;
  }

 private:
  struct Result {
    int best = -1;
    Mask witness = 0;
    std::uint64_t nodes = 0;
  };

  // Does host (already containing x) hold a copy of some member through x?
  bool creates_copy(Mask host, Word x) const {
    for (const auto& p : patterns_) {
      for (const auto& plan : p.plans) {
        if (anchored_match(plan, host, x)) return true;
      }
    }
    return false;
  }

  Mask filter(Mask cand, Mask cur) const {
    Mask out = 0;
    for (Word y : mask_points(cand)) {
      if (!creates_copy(cur | (Mask{1} << y), y)) out |= Mask{1} << y;
    }
    return out;
  }

  bool out_of_time() {
    if (options_.time_limit <= 0) return false;
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (elapsed > options_.time_limit) stopped_.store(true);
    return stopped_.load();
  }

  struct Worker {
    explicit Worker(TuranSearch& s) : search(s) {}

    void dfs(Mask cur, int size, Mask cand) {
      if ((++nodes & 255U) == 0 && search.out_of_time()) return;
      if (search.stopped_.load(std::memory_order_relaxed)) return;
      if (size > best) {
        best = size;
        witness = cur;
        int seen = search.global_best_.load();
        while (seen < size && !search.global_best_.compare_exchange_weak(seen, size)) {
        }
      }
      if (cand == 0) return;
      const int bound = size + std::popcount(cand);
      // Strict against the shared bound so every task still finds its own
      // maximum whenever that maximum is the overall one.
      if (bound <= best || bound < search.global_best_.load(std::memory_order_relaxed)) return;
      const Word x = static_cast<Word>(std::countr_zero(cand));
      const Mask rest = cand & (cand - 1);
      const Mask with = cur | (Mask{1} << x);
      dfs(with, size + 1, search.filter(rest, with));
      dfs(cur, size, rest);
    }

    TuranSearch& search;
    int best = -1;
    Mask witness = 0;
    std::uint64_t nodes = 0;
  };

  int n_;
  SearchOptions options_;
  std::chrono::steady_clock::time_point start_;
  std::vector<AnchoredPattern> patterns_;
  std::atomic<int> global_best_{0};
  std::atomic<bool> stopped_{false};
};

}  // namespace

TuranCertificate ex_search(const Family& family, int n, const SearchOptions& options) {
  if (n < 0) throw UsageError("ex: dimension must be non-negative");
  if (n > kMaxSearchDim) {
    throw CapacityError("ex: dimension " + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxSearchDim));
  }
  TuranSearch search(family, n, options);
  TuranCertificate cert = search.run();
  cert.family = family.key_strings();
  return cert;
}

std::optional<std::string> verify_certificate(const TuranCertificate& cert) {
  if (cert.witness.dim() != cert.n) return "witness dimension differs from n";
  if (cert.witness.size() != static_cast<std::size_t>(cert.value)) {
    return "witness size " + std::to_string(cert.witness.size()) + " differs from value " +
           std::to_string(cert.value);
  }
  for (const auto& text : cert.family) {
    Matroid member;
    try {
      member = parse_compact(text);
    } catch (const ParseError& e) {
      return std::string("unreadable family member: ") + e.what();
    }
    if (contains(cert.witness, member)) return "witness contains family member " + text;
  }
  return std::nullopt;
}

LiftBound maintech_rhs(const Family& family, int n, const SearchOptions& options) {
  LiftBound out;
  out.k = family.k();
  if (out.k > n) throw UsageError("maintech: n is smaller than k");
  out.decomposition = decomposition_family(family);
  out.inner = ex_search(out.decomposition, n - out.k, options);
  out.value = (1LL << n) - (1LL << (n - out.k)) + out.inner.value;
  out.witness = lift(out.inner.witness, n, out.k);
  out.witness_free = true;
  for (const auto& m : family.members()) {
    if (contains(out.witness, m) || contains(out.witness, recoordinatize(m))) {
      out.witness_free = false;
    }
  }
  return out;
}

CliqueConstant clique_constant(int t) {
  if (t < 2) throw UsageError("clique constant needs t >= 2");
  CliqueConstant out;
  while ((2 << out.t0) < t) ++out.t0;
  out.value = (1LL << (t - (1 << out.t0) - 1)) - 1;
  return out;
}

CriticalEdge critical_edge_check(const Matroid& n) {
  if (n.dim() > kMaxCanonDim) {
    throw CapacityError("critical edge: dimension exceeds " + std::to_string(kMaxCanonDim));
  }
  CriticalEdge out;
  out.chi_before = chi(n);
  out.chi_after = out.chi_before;
  for (Word p : n.points()) {
    const Word removed[] = {p};
    const int c = chi(delete_points(n, removed));
    if (c < out.chi_before) {
      out.critical = true;
      out.chi_after = c;
      out.point = p;
      break;
    }
  }
  return out;
}

namespace {

bool independent(const Matroid& m) { return static_cast<std::size_t>(m.rank()) == m.size(); }

// Fewest points of n outside the independent set s whose addition makes s
// dependent, or -1 if adding up to `limit` points never does.
int extra_for_dependence(const Matroid& n, const std::vector<Word>& s, int limit) {
  EchelonBasis span;
  for (Word v : s) span.insert(v);
  std::vector<Word> others;
  for (Word p : n.points()) {
    if (std::find(s.begin(), s.end(), p) == s.end()) others.push_back(p);
  }
  // Sums of j distinct outside points; a sum in span(s) gives a dependency.
  const int m = static_cast<int>(others.size());
  for (int j = 1; j <= std::min(limit, m); ++j) {
    std::vector<int> idx(j);
    for (int i = 0; i < j; ++i) idx[i] = i;
    while (true) {
      Word sum = 0;
      for (int i : idx) sum ^= others[i];
      if (span.in_span(sum)) return j;
      int i = j - 1;
      while (i >= 0 && idx[i] == m - j + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int q = i + 1; q < j; ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return -1;
}

}  // namespace

TierReport corollary_tier(const Family& family, const SearchOptions& options) {
  TierReport out;
  out.k = family.k();
  if (out.k == 0) return out;

  // Smallest independent slice whose removal lowers chi to k.
  int t = 0;
  for (const auto& n : family.members()) {
    if (out.k > n.dim()) continue;
    auto subspaces = enumerate_codim_subspaces(n.dim(), out.k);
    while (auto w = subspaces.next()) {
      const Matroid slice = intersect_flat(n, *w);
      if (slice.empty() || !independent(slice)) continue;
      const auto pts = slice.points();
      if (chi(delete_points(n, pts)) != out.k) continue;
      const int size = static_cast<int>(pts.size());
      if (t == 0 || size < t) t = size;
    }
  }
  if (t == 0) return out;
  out.t = t;
  out.decomposition = decomposition_family(family);

  // Does some dependent set of at most t points lower chi to k? Such a set
  // contains a whole slice N ∩ W.
  bool dependent_drop = false;
  for (const auto& n : family.members()) {
    if (out.k > n.dim() || dependent_drop) continue;
    auto subspaces = enumerate_codim_subspaces(n.dim(), out.k);
    while (auto w = subspaces.next()) {
      const Matroid slice = intersect_flat(n, *w);
      const int size = static_cast<int>(slice.size());
      if (size > t) continue;
      if (!independent(slice)) {
        dependent_drop = true;
        break;
      }
      if (extra_for_dependence(n, slice.points(), t - size) > 0) {
        dependent_drop = true;
        break;
      }
    }
  }

  if (!dependent_drop) {
    out.regime = 'a';
    out.constant = (1LL << (t - 1)) - 1;
    out.extremal_inner = t >= 2 ? pg(t - 1) : Matroid(0);
  } else {
    out.regime = 'b';
    out.constant = ex_search(out.decomposition, t - 1, options).value;
  }
  return out;
}

StabilityReport nearest_bose_burton(const Matroid& m, int k) {
  const int n = m.dim();
  if (n > kMaxStabilityDim) {
    throw CapacityError("nearest-bb: dimension exceeds " + std::to_string(kMaxStabilityDim));
  }
  if (k < 0 || k > n) throw UsageError("nearest-bb: order must lie in [0, dim]");
  if (k > kMaxStabilityOrder) {
    throw CapacityError("nearest-bb: order exceeds " + std::to_string(kMaxStabilityOrder));
  }

  // Walsh–Hadamard transform of the indicator: |M ∩ W| is the mean of the
  // transform over the annihilator of W.
  const std::size_t total = std::size_t{1} << n;
  std::vector<long long> f(total, 0);
  for (Word p : m.points()) f[p] = 1;
  for (std::size_t h = 1; h < total; h <<= 1) {
    for (std::size_t i = 0; i < total; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const long long a = f[j], b = f[j + h];
        f[j] = a + b;
        f[j + h] = a - b;
      }
    }
  }

  StabilityReport out;
  out.input = m;
  out.k = k;
  const long long outside = static_cast<long long>(total) - (1LL << (n - k));
  bool have = false;
  auto subspaces = enumerate_codim_subspaces(n, k);
  while (auto w = subspaces.next()) {
    const auto& checks = w->parity_checks();
    long long sum = 0;
    for (std::size_t sel = 0; sel < (std::size_t{1} << checks.size()); ++sel) {
      Word a = 0;
      for (std::size_t i = 0; i < checks.size(); ++i) {
        if ((sel >> i) & 1U) a ^= checks[i];
      }
      sum += f[a];
    }
    const long long inside = sum >> k;
    const long long distance = outside - static_cast<long long>(m.size()) + 2 * inside;
    if (!have || static_cast<std::size_t>(distance) < out.distance) {
      have = true;
      out.distance = static_cast<std::size_t>(distance);
      out.flat = *w;
    }
  }
  Matroid::Bits bits(total);
  for (Word v = 1; v < total; ++v) {
    if (!out.flat.contains(v)) bits.set(v);
  }
  out.nearest = Matroid::from_bits(n, std::move(bits));
  out.density = static_cast<double>(m.size()) / static_cast<double>(total);
  out.density_gap = out.density - (1.0 - 1.0 / static_cast<double>(1 << k));
  return out;
}

AesReport aes_check(int r, int t) {
  if (t < 1) throw UsageError("aes: t must be positive");
  if (r < t + 2) throw UsageError("aes: requires r >= t + 2");
  if (r > kMaxAesRank) {
    throw CapacityError("aes: rank " + std::to_string(r) + " exceeds " +
                        std::to_string(kMaxAesRank));
  }
  AesReport out;
  out.r = r;
  out.t = t;
  // Size threshold 2^r(1 - 2^(1-t) - 3 * 2^(-2-t)), scaled by 2^(t+2).
  const long long scaled = (1LL << r) * ((1LL << (t + 2)) - 8 - 3);
  const Matroid forbidden = pg(t);
  const int points = (1 << r) - 1;
  for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << points); ++subset) {
    std::vector<Word> pts;
    for (int i = 0; i < points; ++i) {
      if ((subset >> i) & 1U) pts.push_back(static_cast<Word>(i + 1));
    }
    if (rank_of_bits(pts) != r) continue;
    const Matroid m = Matroid::from_points(r, pts);
    if (contains(m, forbidden)) continue;
    const bool affine_enough = chi(m) <= t - 1;
    const int size = static_cast<int>(pts.size());
    if (!affine_enough && size > out.max_non_affine) {
      out.max_non_affine = size;
      out.max_non_affine_witness = m;
    }
    if ((static_cast<long long>(size) << (t + 2)) <= scaled) continue;
    ++out.qualifying;
    if (!affine_enough && out.holds) {
      out.holds = false;
      out.counterexample = m;
    }
  }
  return out;
}

}  // namespace bmx
