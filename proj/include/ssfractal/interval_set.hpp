#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "ssfractal/rational.hpp"

namespace ssf {

struct Interval {
  Rational lo;
  Rational hi;

  bool operator==(const Interval& other) const { return lo == other.lo && hi == other.hi; }
};

/// A compact subset of the real line: a finite union of closed intervals with
/// exact rational endpoints, held in canonical form (sorted, pairwise disjoint,
/// no two intervals touching). The empty set is a valid value.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Canonicalizes an arbitrary list of closed intervals. Touching or
  /// overlapping intervals merge. Throws Error(invalid_interval) if lo > hi.
  static IntervalSet normalize(std::vector<Interval> raw);
  static IntervalSet point(const Rational& x);
  static IntervalSet closed(const Rational& lo, const Rational& hi);

  std::span<const Interval> intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }

  const Rational& min() const;
  const Rational& max() const;

  bool contains(const Rational& x) const;
  /// Subset test: every point of `other` lies in this set.
  bool contains(const IntervalSet& other) const;

  /// Euclidean distance from x to the set. Requires a non-empty set.
  Rational distance_to(const Rational& x) const;

  IntervalSet translated(const Rational& offset) const;

  bool operator==(const IntervalSet& other) const = default;

 private:
  explicit IntervalSet(std::vector<Interval> canonical) : intervals_(std::move(canonical)) {}

  std::vector<Interval> intervals_;
};

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);

/// [E]_delta: points within distance delta of E.
IntervalSet parallel_body(const IntervalSet& e, const Rational& delta);

/// sup over x in `from` of dist(x, to).
Rational directed_distance(const IntervalSet& from, const IntervalSet& to);

/// Exact Hausdorff distance. On each interval of one set the distance to the
/// other set is piecewise linear, so its maximum sits at an endpoint or at the
/// midpoint of a gap of the other set.
Rational hausdorff_distance(const IntervalSet& e, const IntervalSet& f);

Rational diameter(const IntervalSet& e);

}  // namespace ssf
