#pragma once

// Backtracking search for linear maps sending a pattern matroid into a host.
//
// The pattern's span gets a basis drawn from the pattern's own points, so
// every basis image must itself be a host point. Basis vectors are ordered so
// that each one completes as many pattern points as possible; after a basis
// image is fixed, every pattern point whose coordinates first involve that
// basis vector is checked against the host.

#include <optional>
#include <utility>
#include <span>
#include <vector>

#include "bmx/gf2.hpp"
#include "bmx/matroid.hpp"

namespace bmx::detail {

struct PatternPlan {
  int pattern_dim = 0;
  /// Pattern points forming a basis of the pattern's span, in search order.
  std::vector<Word> basis;
  /// unlocked[i]: coordinate masks (over `basis`) of the non-basis pattern
  /// points whose highest coordinate is i.
  std::vector<std::vector<Word>> unlocked;
  /// Echelon rows of span(basis) tagged with their coordinates over `basis`.
  std::vector<std::pair<Word, Word>> reducer;

  int rank() const { return static_cast<int>(basis.size()); }
};

/// Builds a plan; if `anchor` is given it must be a pattern point and becomes
/// the first basis vector.
PatternPlan make_plan(const Matroid& pattern, std::optional<Word> anchor = std::nullopt);

/// Coordinates of `v` in the plan's basis; v must lie in the pattern span.
Word plan_coordinates(const PatternPlan& plan, Word v);

/// Depth-first enumeration of basis images. `in_host(v)` tests membership,
/// `host_points` lists the candidate images. `on_match(images)` is called for
/// every complete assignment and returns true to stop the search.
template <class InHost, class OnMatch>
class EmbeddingSearch {
 public:
  EmbeddingSearch(const PatternPlan& plan, std::span<const Word> host_points, InHost in_host,
                  bool injective, OnMatch on_match)
      : plan_(plan),
        host_points_(host_points),
        in_host_(in_host),
        injective_(injective),
        on_match_(on_match),
        images_(plan.basis.size(), 0) {}

  /// Returns true if on_match asked to stop. `first_image`, when set, fixes
  /// the image of the first basis vector.
  bool run(std::optional<Word> first_image = std::nullopt) {
    first_image_ = first_image;
    return dfs(0);
  }

  const std::vector<Word>& images() const { return images_; }

 private:
  Word image_of(Word coords) const {
    Word out = 0;
    for (int i = 0; coords != 0; ++i, coords >>= 1) {
      if (coords & 1U) out ^= images_[i];
    }
    return out;
  }

  bool try_image(int i, Word y) {
    if (!in_host_(y)) return false;
    if (injective_ && !span_.insert(y)) return false;
    images_[i] = y;
    bool ok = true;
    for (Word coords : plan_.unlocked[i]) {
      const Word img = image_of(coords);
      if (img == 0 || !in_host_(img)) {
        ok = false;
        break;
      }
    }
    if (ok && dfs(i + 1)) return true;
    if (injective_) span_.pop();
    return false;
  }

  bool dfs(int i) {
    if (i == plan_.rank()) return on_match_(images_);
    if (i == 0 && first_image_) return try_image(0, *first_image_);
    for (Word y : host_points_) {
      if (try_image(i, y)) return true;
    }
    return false;
  }

  const PatternPlan& plan_;
  std::span<const Word> host_points_;
  InHost in_host_;
  bool injective_;
  OnMatch on_match_;
  std::vector<Word> images_;
  EchelonBasis span_;
  std::optional<Word> first_image_;
};

/// Extends a basis assignment (plan.basis[i] -> images[i]) to an injective
/// linear map F_2^pattern_dim -> F_2^host_dim. Requires host_dim >=
/// pattern_dim and independent images.
LinearMap extend_to_injective_map(const PatternPlan& plan, std::span<const Word> images,
                                  int host_dim);

/// Extends a basis assignment to some linear map (kernel allowed).
LinearMap extend_to_map(const PatternPlan& plan, std::span<const Word> images, int host_dim);

}  // namespace bmx::detail
