#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carpet/ifs.hpp"
#include "carpet/word.hpp"

namespace carpet {

// n*(t) = min{n ≥ 1 : ᾱⁿ < t}.
int n_star(double alpha_bar, double t);
int n_star(const CarpetSpec& spec, double t);

// n₊(t) = max{n ≥ 1 : α̲ⁿ δ > t}; throws EmptyIndexSet when no n qualifies.
int n_lower_star(double alpha_under, double delta, double t);
// Uses the certified δ_lo.
int n_lower_star(const CarpetSpec& spec, double t);

// π(i) for an eventually periodic word: φ_prefix applied to the fixed point
// of φ_cycle.
Point2 coding_point(const CarpetSpec& spec, const InfiniteWord& w);

struct ScaleIndex {
  int lo = 0;
  int hi = 0;
  // No level-1 cylinder other than i|1 avoids the ball; returned as 0.
  bool out_of_regime = false;

  bool certified() const noexcept { return lo == hi; }
};

// n(i,t): the first level d at which a sibling cylinder E_{i|d k}, k ≠ i_{d+1},
// meets the closed ball B(π(i), t). Each sibling is decided with covers up to
// cert_depth levels below it; undecided levels widen the result to an interval.
ScaleIndex n_of(const CarpetSpec& spec, const InfiniteWord& w, double t, int cert_depth);

struct ScaleSample {
  InfiniteWord word;
  double t = 0.0;
};

struct ScaleReport {
  double t = 0.0;
  Word word_prefix;
  std::string word;
  int n_lower = 0;
  int n_upper = 0;
  ScaleIndex n_exact;
  double ratio = 0.0;     // α₂(i|_t), when certified
  double lo_bound = 0.0;  // α̲ t
  double hi_bound = 0.0;  // t / δ_lo
  double hi_bound_ideal = 0.0;  // t / δ_hi
  bool certified = false;
  bool sandwich_ok = false;
  bool ratio_ok = false;

  bool pass() const noexcept { return certified && sandwich_ok && ratio_ok; }
};

struct LittleOptions {
  int cert_depth = 6;
  // Overrides of the certified separation bounds, for harness self-tests.
  std::optional<double> delta_lo;
  std::optional<double> delta_hi;
};

std::vector<ScaleReport> verify_littlethings(const CarpetSpec& spec, const std::vector<ScaleSample>& samples,
                                             const LittleOptions& opts = {});

// Deterministic samples: random eventually periodic words and log-uniform
// t in [t_lo, t_hi], plus the two values straddling α̲·δ_lo.
std::vector<ScaleSample> scale_samples(const CarpetSpec& spec, std::size_t count, double t_lo, double t_hi,
                                       std::uint64_t seed);

}  // namespace carpet
