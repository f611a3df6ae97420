#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "carpet/geometry.hpp"
#include "carpet/ifs.hpp"
#include "carpet/interval_union.hpp"
#include "carpet/word.hpp"

namespace carpet {

struct Window {
  Point2 center;
  double t = 0.0;
  double radius = 1.0;  // clip radius in rescaled units
};

// ((E - center)/t) ∩ B(0, radius).
struct TangentCloud {
  std::vector<Point2> points;
  double resolution = 0.0;  // rescaled units
  Window window;
};

// (-∞,w] × C_left ∪ [w,∞) × C_right.
struct ProductForm {
  double w = 0.0;
  IntervalUnion1D c_left;
  IntervalUnion1D c_right;
  double residual = 0.0;
  double slack = 0.0;  // discretisation error of the residual
};

struct EndingAnalysis {
  int K = 0;
  std::vector<double> ending_abscissae;  // distinct, sorted
  double delta_K = 0.0;
  int n_K = 0;       // smallest n with δ_K α̲ β^{-n} ≥ 3
  double t_K = 0.0;  // α̲^{n_K} δ_lo, so that n₊(t) ≥ n_K below it
  bool degenerate = false;  // fewer than two distinct endings
};

EndingAnalysis analyze_endings(const CarpetSpec& spec, int K);

// Samples E at absolute resolution diam(Q)·ᾱ^depth around the window.
TangentCloud rescale_window(const CarpetSpec& spec, const Window& window, int depth);
// Same, with the resolution given in rescaled units.
TangentCloud rescale_window_at(const CarpetSpec& spec, const Window& window, double resolution);

struct FitOptions {
  std::size_t coarse_candidates = 96;
  std::size_t refine_candidates = 32;
};

ProductForm fit_product_form(const TangentCloud& cloud, const FitOptions& opts = {});

// Points of the product form inside B(0, radius) on a grid of spacing h.
std::vector<Point2> discretize_product_form(double w, const IntervalUnion1D& left, const IntervalUnion1D& right,
                                            const Point2& center, double radius, double h);

struct EpsPatternOptions {
  std::size_t uv_candidates = 32;
  // Sampling spacing as a fraction of t.
  double sample_fraction = 1.0 / 256.0;
  int cert_depth = 6;
};

struct EpsPatternReport {
  Point2 center;
  double t = 0.0;
  int K = 0;
  int n = 0;  // n(i,t)
  double w = 0.0;
  double u = 0.0;
  double v = 0.0;
  IntervalUnion1D c_left;   // slice of E at u, window y-range
  IntervalUnion1D c_right;  // slice of E at v
  std::size_t ending_lines = 0;  // distinct level-(n+K) ending abscissae meeting B(x,t)
  bool multiple_endings = false;
  double residual = 0.0;
  double bound = 0.0;  // t δ_lo⁻¹ ᾱ^K
  double slack = 0.0;
  bool pass = false;
};

// The two-slice approximation of E ∩ B(π(i), t) by level-(n(i,t)+K) slice
// covers, with w on the ending line meeting the ball (or proj₁ of the centre
// when there is none) and u, v searched on a geometric grid toward w.
EpsPatternReport verify_epspatterns(const CarpetSpec& spec, const InfiniteWord& word, double t, int K,
                                    const EpsPatternOptions& opts = {});

// (λ·pts + z) ∩ [0,1]².
std::vector<Point2> miniset(const std::vector<Point2>& pts, double lambda, const Point2& z);

}  // namespace carpet
