#include "ssfractal/interval_set.hpp"

#include <algorithm>

#include "ssfractal/errors.hpp"

namespace ssf {

namespace {

void require_non_empty(const IntervalSet& e, const char* op) {
  if (e.empty()) throw Error(ErrorKind::empty_set, std::string(op) + " requires a non-empty set");
}

}  // namespace

IntervalSet IntervalSet::normalize(std::vector<Interval> raw) {
  for (const auto& iv : raw) {
    if (iv.lo > iv.hi) {
      throw Error(ErrorKind::invalid_interval, "[" + to_string(iv.lo) + ", " + to_string(iv.hi) + "] has lo > hi");
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<Interval> out;
  out.reserve(raw.size());
  for (auto& iv : raw) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (iv.hi > out.back().hi) out.back().hi = std::move(iv.hi);
    } else {
      out.push_back(std::move(iv));
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::point(const Rational& x) { return IntervalSet({Interval{x, x}}); }

IntervalSet IntervalSet::closed(const Rational& lo, const Rational& hi) {
  return normalize({Interval{lo, hi}});
}

const Rational& IntervalSet::min() const {
  require_non_empty(*this, "min");
  return intervals_.front().lo;
}

const Rational& IntervalSet::max() const {
  require_non_empty(*this, "max");
  return intervals_.back().hi;
}

bool IntervalSet::contains(const Rational& x) const {
  // First interval whose upper end reaches x.
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Interval& iv, const Rational& v) { return iv.hi < v; });
  return it != intervals_.end() && it->lo <= x;
}

bool IntervalSet::contains(const IntervalSet& other) const {
  for (const auto& iv : other.intervals_) {
    auto it = std::lower_bound(intervals_.begin(), intervals_.end(), iv.lo,
                               [](const Interval& a, const Rational& v) { return a.hi < v; });
    if (it == intervals_.end() || it->lo > iv.lo || it->hi < iv.hi) return false;
  }
  return true;
}

Rational IntervalSet::distance_to(const Rational& x) const {
  require_non_empty(*this, "distance_to");
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Interval& iv, const Rational& v) { return iv.hi < v; });
  if (it != intervals_.end() && it->lo <= x) return Rational(0);
  Rational best;
  bool have = false;
  if (it != intervals_.end()) {
    best = it->lo - x;
    have = true;
  }
  if (it != intervals_.begin()) {
    Rational left = x - std::prev(it)->hi;
    if (!have || left < best) best = std::move(left);
  }
  return best;
}

IntervalSet IntervalSet::translated(const Rational& offset) const {
  std::vector<Interval> out;
  out.reserve(intervals_.size());
  for (const auto& iv : intervals_) out.push_back({iv.lo + offset, iv.hi + offset});
  return IntervalSet(std::move(out));
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  const auto ai = a.intervals();
  const auto bi = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < ai.size() && j < bi.size()) {
    const Rational& lo = std::max(ai[i].lo, bi[j].lo);
    const Rational& hi = std::min(ai[i].hi, bi[j].hi);
    if (lo <= hi) out.push_back({lo, hi});
    if (ai[i].hi < bi[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet::normalize(std::move(out));
}

IntervalSet parallel_body(const IntervalSet& e, const Rational& delta) {
  require_non_empty(e, "parallel_body");
  if (delta < 0) throw Error(ErrorKind::invalid_input, "parallel body radius must be non-negative");
  std::vector<Interval> out;
  out.reserve(e.size());
  for (const auto& iv : e.intervals()) out.push_back({iv.lo - delta, iv.hi + delta});
  return IntervalSet::normalize(std::move(out));
}

Rational directed_distance(const IntervalSet& from, const IntervalSet& to) {
  require_non_empty(from, "directed_distance");
  require_non_empty(to, "directed_distance");
  const auto target = to.intervals();
  std::vector<Rational> gap_mid;
  gap_mid.reserve(target.size());
  for (std::size_t i = 0; i + 1 < target.size(); ++i) {
    gap_mid.push_back((target[i].hi + target[i + 1].lo) / 2);
  }
  Rational worst(0);
  auto consider = [&](const Rational& x) {
    Rational d = to.distance_to(x);
    if (d > worst) worst = std::move(d);
  };
  for (const auto& iv : from.intervals()) {
    consider(iv.lo);
    consider(iv.hi);
    auto first = std::lower_bound(gap_mid.begin(), gap_mid.end(), iv.lo);
    for (auto it = first; it != gap_mid.end() && *it <= iv.hi; ++it) consider(*it);
  }
  return worst;
}

Rational hausdorff_distance(const IntervalSet& e, const IntervalSet& f) {
  Rational forward = directed_distance(e, f);
  Rational backward = directed_distance(f, e);
  return forward > backward ? forward : backward;
}

Rational diameter(const IntervalSet& e) {
  require_non_empty(e, "diameter");
  return e.max() - e.min();
}

}  // namespace ssf
