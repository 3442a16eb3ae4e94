#include "bmx/morphism.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <unordered_set>

#include "bmx/detail/embedding.hpp"
#include "bmx/errors.hpp"
#include "bmx/matroid_io.hpp"

namespace bmx {

namespace {

// Echelon rows keyed on the highest bit, each tagged with the combination of
// inserted vectors it represents.
class TaggedEchelon {
 public:
  bool insert(Word v, Word tag) {
    reduce(v, tag);
    if (v == 0) return false;
    const Word top = EchelonBasis::top_bit(v);
    auto it = std::find_if(rows_.begin(), rows_.end(), [top](const auto& r) {
      return EchelonBasis::top_bit(r.first) < top;
    });
    rows_.insert(it, {v, tag});
    return true;
  }

  void reduce(Word& v, Word& tag) const {
    for (const auto& [row, row_tag] : rows_) {
      if (v & EchelonBasis::top_bit(row)) {
        v ^= row;
        tag ^= row_tag;
      }
    }
  }

  const std::vector<std::pair<Word, Word>>& rows() const { return rows_; }

 private:
  std::vector<std::pair<Word, Word>> rows_;
};

}  // namespace

namespace detail {


PatternPlan make_plan(const Matroid& pattern, std::optional<Word> anchor) {
  PatternPlan plan;
  plan.pattern_dim = pattern.dim();
  const auto points = pattern.points();
  if (anchor && !pattern.has(*anchor)) throw UsageError("plan anchor is not a pattern point");

  EchelonBasis span;
  std::vector<Word> outside = points;
  auto commit = [&](Word p) {
    plan.basis.push_back(p);
    span.insert(p);
    std::erase_if(outside, [&](Word q) { return span.in_span(q); });
  };
  if (anchor) commit(*anchor);
  while (!outside.empty()) {
    // Take the point whose addition brings the most pattern points into span.
    Word pick = outside.front();
    std::size_t best = 0;
    for (Word p : outside) {
      span.insert(p);
      std::size_t gained = 0;
      for (Word q : outside) gained += span.in_span(q) ? 1 : 0;
      span.pop();
      if (gained > best) {
        best = gained;
        pick = p;
      }
    }
    commit(pick);
  }

  TaggedEchelon tagged;
  for (std::size_t i = 0; i < plan.basis.size(); ++i) tagged.insert(plan.basis[i], Word{1} << i);
  plan.reducer = tagged.rows();
  plan.unlocked.assign(plan.basis.size(), {});
  for (Word p : points) {
    const Word c = plan_coordinates(plan, p);
    if (std::has_single_bit(c)) continue;
    plan.unlocked[std::bit_width(c) - 1].push_back(c);
  }
  return plan;
}

Word plan_coordinates(const PatternPlan& plan, Word v) {
  Word tag = 0;
  for (const auto& [row, row_tag] : plan.reducer) {
    if (v & EchelonBasis::top_bit(row)) {
      v ^= row;
      tag ^= row_tag;
    }
  }
  if (v != 0) throw UsageError("vector lies outside the pattern span");
  return tag;
}

namespace {

// Completes (basis -> images) to a map on all of F_2^d. Extra domain basis
// vectors are standard vectors; their images come from `extra_image`.
template <class ExtraImage>
LinearMap complete_map(const PatternPlan& plan, std::span<const Word> images, int host_dim,
                       ExtraImage extra_image) {
  const int d = plan.pattern_dim;
  std::vector<Word> full_images(images.begin(), images.end());
  TaggedEchelon domain;
  for (std::size_t i = 0; i < plan.basis.size(); ++i) domain.insert(plan.basis[i], Word{1} << i);
  for (int j = 0; j < d; ++j) {
    const Word e = Word{1} << j;
    if (domain.insert(e, Word{1} << full_images.size())) full_images.push_back(extra_image());
  }
  std::vector<Word> columns(d);
  for (int j = 0; j < d; ++j) {
    Word v = Word{1} << j, tag = 0;
    domain.reduce(v, tag);
    Word out = 0;
    for (int i = 0; tag != 0; ++i, tag >>= 1) {
      if (tag & 1U) out ^= full_images[i];
    }
    columns[j] = out;
  }
  return LinearMap(d, host_dim, std::move(columns));
}

}  // namespace

LinearMap extend_to_injective_map(const PatternPlan& plan, std::span<const Word> images,
                                  int host_dim) {
  EchelonBasis used;
  for (Word y : images) used.insert(y);
  int next = 0;
  return complete_map(plan, images, host_dim, [&] {
    while (next < host_dim && !used.insert(Word{1} << next)) ++next;
    if (next >= host_dim) throw UsageError("host dimension too small for an injective map");
    return Word{1} << next++;
  });
}

LinearMap extend_to_map(const PatternPlan& plan, std::span<const Word> images, int host_dim) {
  return complete_map(plan, images, host_dim, [] { return Word{0}; });
}

}  // namespace detail

namespace {

std::optional<std::vector<Word>> search(const Matroid& host, const detail::PatternPlan& plan,
                                        bool injective) {
  const auto host_points = host.points();
  std::optional<std::vector<Word>> found;
  auto in_host = [&host](Word v) { return host.has(v); };
  auto on_match = [&found](const std::vector<Word>& images) {
    found = images;
    return true;
  };
  detail::EmbeddingSearch search(plan, host_points, in_host, injective, on_match);
  search.run();
  return found;
}

}  // namespace

std::optional<Embedding> find_embedding(const Matroid& host, const Matroid& pattern) {
  if (host.dim() < pattern.dim()) return std::nullopt;
  if (pattern.size() > host.size()) return std::nullopt;
  const auto plan = detail::make_plan(pattern);
  const auto images = search(host, plan, true);
  if (!images) return std::nullopt;
  Embedding out{detail::extend_to_injective_map(plan, *images, host.dim()), {}};
  for (Word p : pattern.points()) out.image.push_back(out.map.apply_bits(p));
  std::sort(out.image.begin(), out.image.end());
  return out;
}

bool contains(const Matroid& host, const Matroid& pattern) {
  return find_embedding(host, pattern).has_value();
}

std::optional<LinearMap> find_homomorphism(const Matroid& pattern, const Matroid& host) {
  const auto plan = detail::make_plan(pattern);
  const auto images = search(host, plan, false);
  if (!images) return std::nullopt;
  return detail::extend_to_map(plan, *images, host.dim());
}

bool homomorphic(const Matroid& pattern, const Matroid& host) {
  return find_homomorphism(pattern, host).has_value();
}

bool isomorphic(const Matroid& a, const Matroid& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  // An injective map of F_2^n to itself carrying a into b is onto b.
  return contains(b, a);
}

namespace {

// Lexicographically greatest characteristic string over ordered bases. The
// string is built in blocks: block j holds indices [2^(j-1), 2^j), which the
// j-th basis vector b_j and the span of the earlier ones determine.
//
// Two bases producing the same string differ by an automorphism. Those are
// kept, and tied candidates in one orbit of the automorphisms fixing the
// current prefix are explored once.
class Canonizer {
 public:
  explicit Canonizer(const Matroid& m)
      : n_(m.dim()),
        total_(std::size_t{1} << n_),
        bits_(m.bits()),
        size_(m.size()),
        span_elems_(total_, 0),
        in_span_(total_, 0),
        cur_(total_, 0) {}

  Matroid::Bits run() {
    in_span_[0] = 1;
    dfs(0, 0);
    Matroid::Bits out(total_);
    for (std::size_t i = 1; i < total_; ++i) {
      if (best_[i]) out.set(i);
    }
    return out;
  }

 private:
  using Map = std::vector<Word>;  // images of e_1..e_n

  static Word apply(const Map& g, Word v) {
    Word out = 0;
    for (int i = 0; v != 0; ++i, v >>= 1) {
      if (v & 1U) out ^= g[i];
    }
    return out;
  }

  // -1, 0, 1 as cur_ compares with best_ on indices [1, end).
  int compare_prefix(std::size_t end) const {
    if (best_.empty()) return 1;
    for (std::size_t i = 1; i < end; ++i) {
      if (cur_[i] != best_[i]) return cur_[i] > best_[i] ? 1 : -1;
    }
    return 0;
  }

  // Completes a partial basis with standard vectors.
  std::vector<Word> completed(const std::vector<Word>& partial) const {
    std::vector<Word> out = partial;
    EchelonBasis span;
    for (Word b : partial) span.insert(b);
    for (int j = 0; j < n_ && static_cast<int>(out.size()) < n_; ++j) {
      if (span.insert(Word{1} << j)) out.push_back(Word{1} << j);
    }
    return out;
  }

  // The linear map sending basis_ to best_basis_ (both completed alike).
  Map automorphism() const {
    const auto from = completed(basis_);
    const auto to = completed(best_basis_);
    TaggedEchelon domain;
    for (int i = 0; i < n_; ++i) domain.insert(from[i], Word{1} << i);
    Map g(n_);
    for (int j = 0; j < n_; ++j) {
      Word v = Word{1} << j, tag = 0;
      domain.reduce(v, tag);
      g[j] = 0;
      for (int i = 0; tag != 0; ++i, tag >>= 1) {
        if (tag & 1U) g[j] ^= to[i];
      }
    }
    return g;
  }

  void leaf() {
    const int cmp = compare_prefix(total_);
    if (cmp > 0) {
      best_ = cur_;
      best_basis_ = basis_;
    } else if (cmp == 0) {
      Map g = automorphism();
      bool identity = true;
      for (int j = 0; j < n_; ++j) identity = identity && g[j] == (Word{1} << j);
      if (!identity) generators_.push_back(std::move(g));
    }
  }

  // Orbit representatives under the stored automorphisms fixing basis_.
  std::vector<Word> orbits() const {
    std::vector<Word> parent(total_);
    for (Word v = 0; v < total_; ++v) parent[v] = v;
    auto find = [&](Word x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const Map& g : generators_) {
      bool fixes = true;
      for (Word b : basis_) fixes = fixes && apply(g, b) == b;
      if (!fixes) continue;
      for (Word v = 1; v < total_; ++v) {
        const Word a = find(v), b = find(apply(g, v));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (Word v = 0; v < total_; ++v) parent[v] = find(v);
    return parent;
  }

  void dfs(int depth, std::size_t inside) {
    const std::size_t len = std::size_t{1} << depth;
    const std::size_t outside = size_ - inside;
    if (depth == n_ || outside == 0 || outside == total_ - len) {
      // The remaining string no longer depends on the basis choice.
      std::fill(cur_.begin() + static_cast<std::ptrdiff_t>(len), cur_.end(), outside == 0 ? 0 : 1);
      leaf();
      return;
    }

    std::vector<Word> ties;
    std::vector<char> top(len, 0), block(len, 0);
    bool have_top = false;
    for (Word b = 1; b < total_; ++b) {
      if (in_span_[b]) continue;
      for (std::size_t y = 0; y < len; ++y) block[y] = bits_.test(b ^ span_elems_[y]) ? 1 : 0;
      if (!have_top || block > top) {
        top = block;
        have_top = true;
        ties.clear();
      }
      if (block == top) ties.push_back(b);
    }

    std::copy(top.begin(), top.end(), cur_.begin() + static_cast<std::ptrdiff_t>(len));
    if (compare_prefix(2 * len) < 0) return;
    std::size_t gained = 0;
    for (char c : top) gained += static_cast<std::size_t>(c);

    std::vector<Word> explored;
    std::size_t known_generators = generators_.size();
    std::vector<Word> orbit = orbits();
    for (Word b : ties) {
      if (generators_.size() != known_generators) {
        known_generators = generators_.size();
        orbit = orbits();
      }
      const bool seen = std::any_of(explored.begin(), explored.end(),
                                    [&](Word e) { return orbit[e] == orbit[b]; });
      if (seen) continue;
      explored.push_back(b);

      for (std::size_t y = 0; y < len; ++y) {
        const Word v = b ^ span_elems_[y];
        span_elems_[len + y] = v;
        in_span_[v] = 1;
      }
      basis_.push_back(b);
      std::copy(top.begin(), top.end(), cur_.begin() + static_cast<std::ptrdiff_t>(len));
      if (compare_prefix(2 * len) >= 0) dfs(depth + 1, inside + gained);
      basis_.pop_back();
      for (std::size_t y = 0; y < len; ++y) in_span_[span_elems_[len + y]] = 0;
    }
  }

  int n_;
  std::size_t total_;
  const Matroid::Bits& bits_;
  std::size_t size_;
  std::vector<Word> span_elems_;
  std::vector<char> in_span_;
  std::vector<char> cur_;
  std::vector<char> best_;
  std::vector<Word> basis_;
  std::vector<Word> best_basis_;
  std::vector<Map> generators_;
};

}  // namespace

std::string CanonicalKey::to_string() const { return to_compact(matroid()); }

std::strong_ordering operator<=>(const CanonicalKey& a, const CanonicalKey& b) {
  if (auto c = a.dim <=> b.dim; c != 0) return c;
  return a.to_string() <=> b.to_string();
}

CanonicalKey compute_canonical_key(const Matroid& m) {
  if (m.dim() > kMaxCanonDim) {
    throw CapacityError("canonical key: dimension " + std::to_string(m.dim()) + " exceeds " +
                        std::to_string(kMaxCanonDim));
  }
  return CanonicalKey{m.dim(), Canonizer(m).run()};
}

std::optional<CanonicalKey> CanonicalKeyCache::find(const std::string& compact) const {
  std::shared_lock lock(mutex_);
  auto it = table_.find(compact);
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

void CanonicalKeyCache::insert(const std::string& compact, const CanonicalKey& key) {
  std::unique_lock lock(mutex_);
  table_.emplace(compact, key);
}

std::size_t CanonicalKeyCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

CanonicalKeyCache& CanonicalKeyCache::global() {
  static CanonicalKeyCache cache;
  return cache;
}

CanonicalKey canonical_key(const Matroid& m) {
  if (m.dim() > kMaxCanonDim) return compute_canonical_key(m);
  const std::string compact = to_compact(m);
  auto& cache = CanonicalKeyCache::global();
  if (auto hit = cache.find(compact)) return *hit;
  CanonicalKey key = compute_canonical_key(m);
  cache.insert(compact, key);
  return key;
}

std::uint64_t count_restrictions(const Matroid& host, const Matroid& pattern) {
  if (host.dim() > kMaxCountHostDim) {
    throw CapacityError("count_restrictions: host dimension exceeds " +
                        std::to_string(kMaxCountHostDim));
  }
  if (pattern.rank() > kMaxCountPatternRank) {
    throw CapacityError("count_restrictions: pattern rank exceeds " +
                        std::to_string(kMaxCountPatternRank));
  }
  if (host.dim() < pattern.dim()) return 0;
  if (pattern.empty()) return 1;

  const auto plan = detail::make_plan(pattern);
  std::vector<Word> coords;
  for (Word p : pattern.points()) coords.push_back(detail::plan_coordinates(plan, p));
  const auto host_points = host.points();
  std::unordered_set<std::uint64_t> images;
  auto in_host = [&host](Word v) { return host.has(v); };
  auto on_match = [&](const std::vector<Word>& basis_images) {
    std::uint64_t mask = 0;
    for (Word c : coords) {
      Word v = 0;
      for (int i = 0; c != 0; ++i, c >>= 1) {
        if (c & 1U) v ^= basis_images[i];
      }
      mask |= std::uint64_t{1} << v;
    }
    images.insert(mask);
    return false;
  };
  detail::EmbeddingSearch search(plan, host_points, in_host, true, on_match);
  search.run();
  return images.size();
}

}  // namespace bmx
