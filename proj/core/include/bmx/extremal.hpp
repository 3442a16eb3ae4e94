#pragma once

// Turán-type extremal problems for binary matroids: decomposition families,
// exact search for ex(F, n), the lift construction bound and its corollaries,
// distance to Bose–Burton geometries.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bmx/gf2.hpp"
#include "bmx/matroid.hpp"
#include "bmx/morphism.hpp"

namespace bmx {

/// A finite set of forbidden matroids, one per isomorphism class, sorted by
/// canonical key.
class Family {
 public:
  Family() = default;
  /// Deduplicates by canonical key. Throws UsageError if `members` is empty.
  static Family of(std::vector<Matroid> members);

  const std::vector<Matroid>& members() const { return members_; }
  const std::vector<CanonicalKey>& keys() const { return keys_; }
  std::size_t size() const { return members_.size(); }
  /// Compact strings of the canonical keys, in order.
  std::vector<std::string> key_strings() const;

  /// min over members of chi, minus one. Throws UsageError for an empty member.
  int k() const;

 private:
  std::vector<Matroid> members_;
  std::vector<CanonicalKey> keys_;
};

/// Restriction-minimal slices N ∩ W over members N and codimension-k
/// subspaces W, recoordinatized; the family itself when k = 0.
Family decomposition_family(const Family& family);

inline constexpr int kMaxSearchDim = 6;

struct SearchOptions {
  /// Wall-clock limit in seconds; <= 0 means none.
  double time_limit = 0;
  int threads = 1;
};

struct TuranCertificate {
  std::vector<std::string> family;  // compact canonical keys
  int n = 0;
  int value = 0;
  Matroid witness;
  std::string method;  // "branch-bound" or "formula"
  bool certified = false;
  std::uint64_t nodes = 0;
  double elapsed_ms = 0;
};

/// Largest n-dimensional matroid with no restriction isomorphic to a family
/// member. Throws CapacityError for n > kMaxSearchDim and UsageError if a
/// member is empty. On budget expiry returns the incumbent with
/// certified = false.
TuranCertificate ex_search(const Family& family, int n, const SearchOptions& options = {});

/// Checks a certificate against its own family list: witness dimension and
/// size, and freeness. Returns a diagnostic on failure.
std::optional<std::string> verify_certificate(const TuranCertificate& cert);

struct LiftBound {
  int k = 0;
  Family decomposition;
  TuranCertificate inner;  // ex(decomposition, n - k)
  long long value = 0;     // 2^n - 2^(n-k) + inner.value
  Matroid witness;         // lift(inner.witness, n, k)
  /// Witness avoids every member as given and every member recoordinatized.
  bool witness_free = false;
};

/// 2^n(1 - 2^-k) + ex(D(F), n - k) with its lift construction.
LiftBound maintech_rhs(const Family& family, int n, const SearchOptions& options = {});

struct CliqueConstant {
  int t0 = 0;
  long long value = 0;
};

/// t0 = largest integer with 2^t0 < t; value = 2^(t - 2^t0 - 1) - 1.
CliqueConstant clique_constant(int t);

struct CriticalEdge {
  bool critical = false;
  int chi_before = 0;
  int chi_after = 0;
  /// First point (by index) whose deletion lowers chi.
  std::optional<Word> point;
};

CriticalEdge critical_edge_check(const Matroid& n);

struct TierReport {
  char regime = 'c';  // 'a', 'b' or 'c'
  int k = 0;
  /// Smallest independent removal that lowers chi to k; 0 if none.
  int t = 0;
  Family decomposition;
  /// Additive constant: 2^(t-1) - 1 in regime a, ex(D, t - 1) in regime b.
  std::optional<long long> constant;
  /// Regime a: the extremal lift's inner geometry, pg(t - 1) (empty when t = 1).
  std::optional<Matroid> extremal_inner;
};

TierReport corollary_tier(const Family& family, const SearchOptions& options = {});

struct StabilityReport {
  Matroid input;
  int k = 0;
  Subspace flat;   // best W (codimension k)
  Matroid nearest;  // F_2^n \ W
  std::size_t distance = 0;
  double density = 0;      // |M| / 2^n
  double density_gap = 0;  // density - (1 - 2^-k)
};

inline constexpr int kMaxStabilityDim = 10;
inline constexpr int kMaxStabilityOrder = 3;

/// Closest Bose–Burton geometry of order k. Ties go to the first W in
/// codimension-subspace enumeration order.
StabilityReport nearest_bose_burton(const Matroid& m, int k);

struct AesReport {
  int r = 0;
  int t = 0;
  bool holds = true;
  /// Subsets satisfying the hypotheses.
  std::uint64_t qualifying = 0;
  std::optional<Matroid> counterexample;
  /// Largest rank-r, pg(t)-free matroid with chi > t - 1.
  int max_non_affine = 0;
  std::optional<Matroid> max_non_affine_witness;
};

inline constexpr int kMaxAesRank = 4;

/// Exhaustive check over rank-r, pg(t)-free matroids in F_2^r larger than
/// 2^r(1 - 2^(1-t) - 3 * 2^(-2-t)) that chi <= t - 1. Throws UsageError if
/// r < t + 2, CapacityError if r > kMaxAesRank.
AesReport aes_check(int r, int t);

}  // namespace bmx
