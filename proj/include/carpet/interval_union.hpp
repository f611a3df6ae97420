#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "carpet/error.hpp"

namespace carpet {

template <class T>
struct BasicInterval {
  T lo;
  T hi;

  bool contains(const T& x) const { return lo <= x && x <= hi; }
  T length() const { return hi - lo; }

  friend bool operator==(const BasicInterval& a, const BasicInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// Finite union of closed intervals kept in canonical form: sorted, pairwise
// disjoint, and with touching neighbours merged. For floating endpoints,
// neighbours closer than `merge_tol` are merged as well.
template <class T>
class BasicIntervalUnion {
 public:
  using Interval = BasicInterval<T>;

  BasicIntervalUnion() = default;

  explicit BasicIntervalUnion(std::vector<Interval> parts, T merge_tol = T(0))
      : parts_(std::move(parts)) {
    canonicalize(merge_tol);
  }

  static BasicIntervalUnion single(T lo, T hi) { return BasicIntervalUnion({Interval{lo, hi}}); }

  const std::vector<Interval>& intervals() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  std::size_t size() const noexcept { return parts_.size(); }
  const Interval& operator[](std::size_t i) const { return parts_[i]; }

  bool contains(const T& x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const T& v, const Interval& iv) { return v < iv.lo; });
    if (it == parts_.begin()) return false;
    return x <= std::prev(it)->hi;
  }

  T measure() const {
    T total(0);
    for (const auto& iv : parts_) total += iv.hi - iv.lo;
    return total;
  }

  Interval hull() const {
    if (parts_.empty()) throw Error(Errc::EmptyInput, "hull of an empty interval union");
    return Interval{parts_.front().lo, parts_.back().hi};
  }

  BasicIntervalUnion unite(const BasicIntervalUnion& other, T merge_tol = T(0)) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return BasicIntervalUnion(std::move(all), merge_tol);
  }

  // Gaps of this union inside `window`. The returned intervals are the
  // closures of open gaps.
  BasicIntervalUnion complement_within(const Interval& window) const {
    std::vector<Interval> gaps;
    T cursor = window.lo;
    for (const auto& iv : parts_) {
      if (iv.hi < window.lo) continue;
      if (iv.lo > window.hi) break;
      if (iv.lo > cursor) gaps.push_back(Interval{cursor, iv.lo});
      if (iv.hi > cursor) cursor = iv.hi;
    }
    if (cursor < window.hi) gaps.push_back(Interval{cursor, window.hi});
    BasicIntervalUnion out;
    out.parts_ = std::move(gaps);
    return out;
  }

  // Every interval of *this lies inside some interval of `other` widened by tol.
  bool subset_of(const BasicIntervalUnion& other, T tol = T(0)) const {
    for (const auto& iv : parts_) {
      bool inside = false;
      for (const auto& ov : other.parts_) {
        if (ov.lo - tol <= iv.lo && iv.hi <= ov.hi + tol) {
          inside = true;
          break;
        }
      }
      if (!inside) return false;
    }
    return true;
  }

  friend bool operator==(const BasicIntervalUnion& a, const BasicIntervalUnion& b) {
    return a.parts_ == b.parts_;
  }

 private:
  void canonicalize(T merge_tol) {
    for (auto& iv : parts_) {
      if (iv.hi < iv.lo) std::swap(iv.lo, iv.hi);
    }
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    merged.reserve(parts_.size());
    for (const auto& iv : parts_) {
      if (!merged.empty() && iv.lo <= merged.back().hi + merge_tol) {
        if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
      } else {
        merged.push_back(iv);
      }
    }
    parts_ = std::move(merged);
  }

  std::vector<Interval> parts_;
};

using Interval1D = BasicInterval<double>;
using IntervalUnion1D = BasicIntervalUnion<double>;

}  // namespace carpet
