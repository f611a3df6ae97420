#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "carpet/affine.hpp"
#include "carpet/budget.hpp"
#include "carpet/word.hpp"

namespace carpet {

struct BoundingRect {
  Rect rect;
  // Certified bound on the Hausdorff distance between `rect` and the true
  // minimal rectangle, per side. Zero when the exact fixed point verified.
  double error = 0.0;
  std::optional<ExactRect> exact;
  std::size_t iterations = 0;
};

struct DeltaBounds {
  double lo = 0.0;
  double hi = 0.0;
  int depth = 0;
};

struct SscStatus {
  bool certified = false;
  int depth = 0;  // first depth with a positive lower bound, or the max depth tried
  double delta_lo = 0.0;
};

struct ValidateOptions {
  double hull_tol = 1e-12;
  int max_certification_depth = 12;
  std::uint64_t budget = kDefaultWordBudget;
};

// A validated diagonal affine IFS together with its derived constants.
class CarpetSpec {
 public:
  std::size_t size() const noexcept { return maps_.size(); }
  const std::vector<AffineMap2D>& maps() const noexcept { return maps_; }
  const std::vector<ExactAffineMap>& exact_maps() const noexcept { return exact_maps_; }
  const AffineMap2D& map(std::size_t i) const { return maps_.at(i); }

  double alpha1(std::size_t i) const;
  double alpha2(std::size_t i) const;

  double alpha_bar() const noexcept { return alpha_bar_; }      // max α₁(i)
  double alpha_under() const noexcept { return alpha_under_; }  // min α₂(i)
  double beta() const noexcept { return beta_; }                // max α₂(i)/α₁(i)
  double alpha2_max() const noexcept { return alpha2_max_; }
  // Largest scale factor in either axis; equals alpha_bar() under H1.
  double contraction() const noexcept { return std::max(alpha_bar_, alpha2_max_); }

  const BoundingRect& bounding() const noexcept { return bounding_; }
  const Rect& q() const noexcept { return bounding_.rect; }
  double diam_q() const noexcept { return diameter(bounding_.rect); }

  const DeltaBounds& delta() const noexcept { return delta_; }
  const SscStatus& ssc() const noexcept { return ssc_; }
  int certification_depth() const noexcept { return delta_.depth; }
  std::uint64_t budget() const noexcept { return budget_; }

  // Fixed points of the first-level maps; every image of one under a finite
  // composition lies in the attractor.
  const std::vector<Point2>& fixed_points() const noexcept { return fixed_points_; }

 private:
  friend CarpetSpec validate_carpet(std::vector<ExactAffineMap>, const ValidateOptions&);

  std::vector<AffineMap2D> maps_;
  std::vector<ExactAffineMap> exact_maps_;
  std::vector<Point2> fixed_points_;
  double alpha_bar_ = 0.0;
  double alpha_under_ = 0.0;
  double alpha2_max_ = 0.0;
  double beta_ = 0.0;
  BoundingRect bounding_;
  DeltaBounds delta_;
  SscStatus ssc_;
  std::uint64_t budget_ = kDefaultWordBudget;
};

CarpetSpec validate_carpet(std::vector<ExactAffineMap> maps, const ValidateOptions& options = {});
// Floating inputs are converted through their shortest round-trip decimal.
CarpetSpec validate_carpet(const std::vector<AffineMap2D>& maps, const ValidateOptions& options = {});

// φ_w = φ_{w1} ∘ ⋯ ∘ φ_{wn}; the empty word gives the identity.
AffineMap2D compose(const CarpetSpec& spec, const Word& w);
ExactAffineMap compose_exact(const CarpetSpec& spec, const Word& w);

// Minimal axis-parallel rectangle containing the attractor, by interval hull
// iteration from an invariant start, then exact verification when possible.
BoundingRect compute_bounding_rect(const std::vector<ExactAffineMap>& maps, double tol = 1e-12);

// Q_w = φ_w(Q).
Rect cylinder_rect(const CarpetSpec& spec, const Word& w);

// Certified enclosure of δ = min_{i≠j} dist(φ_i(E), φ_j(E)) from depth-m data.
DeltaBounds separation_delta(const CarpetSpec& spec, int depth);

SscStatus ssc_check(const CarpetSpec& spec, int max_depth);

// Smallest m with contraction^m · diam(Q) < δ_hi/4, capped at max_depth.
int default_certification_depth(const CarpetSpec& spec, double delta_hi, int max_depth);

// Conjugates the system by the homothety taking Q's lower-left corner to the
// origin and its longer side to length 1, so the attractor sits in [0,1]².
CarpetSpec normalized_to_unit_square(const CarpetSpec& spec);

// Depth-first enumeration of all words of `depth`, calling f(word, map).
// Children are pruned when `descend(word, map)` returns false.
template <class Descend, class Leaf>
void for_each_word(const CarpetSpec& spec, int depth, BudgetCounter& budget, Descend&& descend, Leaf&& leaf) {
  Word w;
  std::vector<AffineMap2D> stack{AffineMap2D::identity()};
  auto rec = [&](auto&& self, int level) -> void {
    budget.tick();
    const AffineMap2D f = stack.back();
    if (level == depth) {
      leaf(w, f);
      return;
    }
    if (!descend(w, f)) return;
    for (std::size_t i = 0; i < spec.size(); ++i) {
      stack.push_back(f * spec.map(i));
      w.push_back(static_cast<Symbol>(i));
      self(self, level + 1);
      w.pop_back();
      stack.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace carpet
