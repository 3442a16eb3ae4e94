#include "bmx/gf2.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "bmx/errors.hpp"

namespace bmx {

namespace {

void check_ambient(int n) {
  if (n < 0 || n > kMaxDim) {
    throw UsageError("ambient dimension " + std::to_string(n) + " outside [0, " +
                     std::to_string(kMaxDim) + "]");
  }
}

int lowest_bit(Word v) { return __builtin_ctz(v); }

// In-place reduced row echelon form, pivots at lowest set bits, sorted.
std::vector<Word> rref(std::span<const Word> vectors) {
  std::vector<Word> rows;
  for (Word v : vectors) {
    for (Word r : rows) {
      if (v & (Word{1} << lowest_bit(r))) v ^= r;
    }
    if (v == 0) continue;
    const Word pivot = Word{1} << lowest_bit(v);
    for (Word& r : rows) {
      if (r & pivot) r ^= v;
    }
    rows.push_back(v);
  }
  std::sort(rows.begin(), rows.end(),
            [](Word a, Word b) { return lowest_bit(a) < lowest_bit(b); });
  return rows;
}

// Annihilator basis for a reduced basis: one functional per free column f,
// e_f plus the pivots of the rows that have column f set.
std::vector<Word> annihilator_of(int ambient, const std::vector<Word>& basis) {
  Word pivot_mask = 0;
  for (Word r : basis) pivot_mask |= Word{1} << lowest_bit(r);
  std::vector<Word> out;
  for (int f = 0; f < ambient; ++f) {
    const Word col = Word{1} << f;
    if (pivot_mask & col) continue;
    Word a = col;
    for (Word r : basis) {
      if (r & col) a |= Word{1} << lowest_bit(r);
    }
    out.push_back(a);
  }
  return rref(out);
}

}  // namespace

Gf2Vector::Gf2Vector(Word bits, int ambient) : bits_(bits), ambient_(ambient) {
  check_ambient(ambient);
  if ((bits & ~low_mask(ambient)) != 0) {
    throw UsageError("vector has coordinates beyond ambient dimension " +
                     std::to_string(ambient));
  }
}

Gf2Vector Gf2Vector::unit(int i, int ambient) {
  if (i < 1 || i > ambient) throw UsageError("unit vector index out of range");
  return Gf2Vector(Word{1} << (i - 1), ambient);
}

Gf2Vector Gf2Vector::operator+(const Gf2Vector& other) const {
  if (ambient_ != other.ambient_) throw UsageError("ambient dimension mismatch");
  return Gf2Vector(bits_ ^ other.bits_, ambient_);
}

int Gf2Vector::dot(const Gf2Vector& other) const {
  if (ambient_ != other.ambient_) throw UsageError("ambient dimension mismatch");
  return parity(bits_ & other.bits_);
}

int rank_of_bits(std::span<const Word> vectors) {
  EchelonBasis basis;
  for (Word v : vectors) basis.insert(v);
  return basis.size();
}

int rank_of_set(std::span<const Gf2Vector> vectors) {
  std::vector<Word> raw;
  raw.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.ambient() != vectors.front().ambient()) {
      throw UsageError("rank_of_set: mixed ambient dimensions");
    }
    raw.push_back(v.bits());
  }
  return rank_of_bits(raw);
}

Subspace::Subspace(int ambient) : ambient_(ambient) {
  check_ambient(ambient);
  checks_ = annihilator_of(ambient_, basis_);
}

Subspace::Subspace(int ambient, std::vector<Word> reduced_basis)
    : ambient_(ambient), basis_(std::move(reduced_basis)) {
  checks_ = annihilator_of(ambient_, basis_);
}

Subspace Subspace::span_of(int ambient, std::span<const Word> vectors) {
  check_ambient(ambient);
  for (Word v : vectors) {
    if ((v & ~low_mask(ambient)) != 0) {
      throw UsageError("vector has coordinates beyond ambient dimension");
    }
  }
  return Subspace(ambient, rref(vectors));
}

bool Subspace::contains(Word v) const {
  if ((v & ~low_mask(ambient_)) != 0) return false;
  for (Word r : basis_) {
    if (v & (Word{1} << lowest_bit(r))) v ^= r;
  }
  return v == 0;
}

bool Subspace::contains(const Gf2Vector& v) const {
  if (v.ambient() != ambient_) throw UsageError("ambient dimension mismatch");
  return contains(v.bits());
}

std::vector<Word> Subspace::elements() const {
  std::vector<Word> out(std::size_t{1} << basis_.size(), 0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::size_t half = std::size_t{1} << i;
    for (std::size_t j = 0; j < half; ++j) out[half + j] = out[j] ^ basis_[i];
  }
  return out;
}

Subspace Subspace::annihilator() const { return Subspace(ambient_, checks_); }

Subspace reduce(std::span<const Gf2Vector> vectors) {
  if (vectors.empty()) return Subspace(0);
  std::vector<Word> raw;
  for (const auto& v : vectors) {
    if (v.ambient() != vectors.front().ambient()) {
      throw UsageError("reduce: mixed ambient dimensions");
    }
    raw.push_back(v.bits());
  }
  return Subspace::span_of(vectors.front().ambient(), raw);
}

std::uint64_t gaussian_binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  // Row-by-row recurrence [n,k] = [n-1,k-1] + 2^k [n-1,k].
  std::vector<std::uint64_t> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (int m = 1; m <= n; ++m) {
    for (int j = std::min(m, k); j >= 1; --j) {
      const std::uint64_t a = row[j - 1];
      const std::uint64_t b = row[j];
      if (j >= 64 || (b != 0 && b > (kMax >> j))) {
        throw CapacityError("gaussian binomial overflows 64 bits");
      }
      const std::uint64_t shifted = b << j;
      if (shifted > kMax - a) throw CapacityError("gaussian binomial overflows 64 bits");
      row[j] = a + shifted;
    }
  }
  return row[k];
}

SubspaceEnumerator::SubspaceEnumerator(int n, int k) : n_(n), k_(k) {
  check_ambient(n);
  if (k < 0 || k > n) throw UsageError("subspace dimension outside [0, n]");
  pivots_.resize(k);
  for (int i = 0; i < k; ++i) pivots_[i] = i;
  load_pivots();
}

void SubspaceEnumerator::load_pivots() {
  slots_.clear();
  Word pivot_mask = 0;
  for (int p : pivots_) pivot_mask |= Word{1} << p;
  for (int row = 0; row < k_; ++row) {
    for (int col = pivots_[row] + 1; col < n_; ++col) {
      if (!(pivot_mask & (Word{1} << col))) slots_.emplace_back(row, col);
    }
  }
  counter_.assign(slots_.size(), 0);
  fresh_ = true;
}

bool SubspaceEnumerator::advance_pivots() {
  int i = k_ - 1;
  while (i >= 0 && pivots_[i] == n_ - k_ + i) --i;
  if (i < 0) return false;
  ++pivots_[i];
  for (int j = i + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
  load_pivots();
  return true;
}

void SubspaceEnumerator::build(std::vector<Word>& out) const {
  out.assign(k_, 0);
  for (int row = 0; row < k_; ++row) out[row] = Word{1} << pivots_[row];
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    if (counter_[s]) out[slots_[s].first] |= Word{1} << slots_[s].second;
  }
}

bool SubspaceEnumerator::next_basis(std::vector<Word>& out) {
  if (done_) return false;
  if (fresh_) {
    fresh_ = false;
    build(out);
    return true;
  }
  // Odometer: last slot varies fastest.
  for (std::size_t s = counter_.size(); s-- > 0;) {
    if (counter_[s] == 0) {
      counter_[s] = 1;
      build(out);
      return true;
    }
    counter_[s] = 0;
  }
  if (!advance_pivots()) {
    done_ = true;
    return false;
  }
  fresh_ = false;
  build(out);
  return true;
}

std::optional<Subspace> SubspaceEnumerator::next() {
  std::vector<Word> basis;
  if (!next_basis(basis)) return std::nullopt;
  return Subspace(n_, std::move(basis));
}

CodimSubspaceEnumerator::CodimSubspaceEnumerator(int n, int c) : n_(n), dual_(n, c) {}

std::optional<Subspace> CodimSubspaceEnumerator::next() {
  std::vector<Word> checks;
  if (!dual_.next_basis(checks)) return std::nullopt;
  Subspace kernel(n_, annihilator_of(n_, checks));
  return kernel;
}

LinearMap::LinearMap(int domain_dim, int codomain_dim, std::vector<Word> images)
    : domain_dim_(domain_dim), codomain_dim_(codomain_dim), images_(std::move(images)) {
  check_ambient(domain_dim);
  check_ambient(codomain_dim);
  if (static_cast<int>(images_.size()) != domain_dim) {
    throw UsageError("linear map needs one image per domain basis vector");
  }
  for (Word w : images_) {
    if ((w & ~low_mask(codomain_dim)) != 0) {
      throw UsageError("linear map image outside codomain");
    }
  }
}

LinearMap LinearMap::identity(int n) {
  std::vector<Word> images(n);
  for (int i = 0; i < n; ++i) images[i] = Word{1} << i;
  return LinearMap(n, n, std::move(images));
}

bool LinearMap::is_injective() const { return rank_of_bits(images_) == domain_dim_; }

Gf2Vector apply_map(const LinearMap& map, const Gf2Vector& v) {
  if (v.ambient() != map.domain_dim()) {
    throw UsageError("apply_map: vector not in the map's domain");
  }
  return Gf2Vector(map.apply_bits(v.bits()), map.codomain_dim());
}

bool EchelonBasis::insert(Word v) {
  v = reduce(v);
  if (v == 0) return false;
  const Word top = top_bit(v);
  auto it = std::find_if(rows_.begin(), rows_.end(),
                         [top](Word r) { return top_bit(r) < top; });
  positions_.push_back(static_cast<std::size_t>(it - rows_.begin()));
  rows_.insert(it, v);
  return true;
}

Word EchelonBasis::pivot_mask() const {
  Word m = 0;
  for (Word r : rows_) m |= top_bit(r);
  return m;
}

}  // namespace bmx
