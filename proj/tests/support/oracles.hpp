#pragma once

// Brute-force reference computations. Nothing here calls the routine it is
// used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "ssfractal/ifs.hpp"
#include "ssfractal/interval_set.hpp"

namespace ssf::testing {

struct DoubleInterval {
  double lo;
  double hi;
};

inline std::vector<DoubleInterval> to_doubles(const IntervalSet& e) {
  std::vector<DoubleInterval> out;
  for (const auto& iv : e.intervals()) out.push_back({iv.lo.get_d(), iv.hi.get_d()});
  return out;
}

inline double brute_distance(double x, const std::vector<DoubleInterval>& f) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : f) {
    const double d = x < iv.lo ? iv.lo - x : (x > iv.hi ? x - iv.hi : 0.0);
    best = std::min(best, d);
  }
  return best;
}

/// sup over grid points of E (plus E's endpoints) of the distance to F. The
/// grid step is `relative_step` times the span of E and F together.
inline double grid_directed_distance(const IntervalSet& e, const IntervalSet& f, double relative_step = 1e-4) {
  const auto ed = to_doubles(e);
  const auto fd = to_doubles(f);
  const double lo = std::min(ed.front().lo, fd.front().lo);
  const double hi = std::max(ed.back().hi, fd.back().hi);
  const double step = (hi - lo) * relative_step;
  double worst = 0.0;
  for (const auto& iv : ed) {
    worst = std::max({worst, brute_distance(iv.lo, fd), brute_distance(iv.hi, fd)});
    if (step <= 0) continue;
    for (double x = lo + std::ceil((iv.lo - lo) / step) * step; x <= iv.hi; x += step) {
      worst = std::max(worst, brute_distance(x, fd));
    }
  }
  return worst;
}

inline double grid_hausdorff(const IntervalSet& e, const IntervalSet& f, double relative_step = 1e-4) {
  return std::max(grid_directed_distance(e, f, relative_step), grid_directed_distance(f, e, relative_step));
}

inline double grid_step(const IntervalSet& e, const IntervalSet& f, double relative_step = 1e-4) {
  return Rational(std::max(e.max(), f.max()) - std::min(e.min(), f.min())).get_d() * relative_step;
}

/// Every sequence in L^depth, in lexicographic order.
inline std::vector<std::vector<std::size_t>> enumerate_sequences(const Schedule& sched, std::size_t depth) {
  std::vector<std::vector<std::size_t>> out{{}};
  for (std::size_t level = 1; level <= depth; ++level) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& s : out) {
      for (std::size_t j : sched.at(level)) {
        next.push_back(s);
        next.back().push_back(j);
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Stopping-rule cut found by scanning every sequence of L^depth: each
/// sequence is truncated at the first prefix whose ratio product is <= rho,
/// duplicates removed. `depth` must reach past the deepest cut.
inline std::vector<std::vector<std::size_t>> brute_stopping_cut(const SimilitudeSystem& sys, const Schedule& sched,
                                                                const Rational& rho, std::size_t depth) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : enumerate_sequences(sched, depth)) {
    Rational product(1);
    for (std::size_t i = 0; i < s.size(); ++i) {
      product *= sys.map(s[i]).ratio;
      if (product <= rho) {
        out.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i + 1));
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// K_k from the closed-form description: [x, x + 3^-k] for every x with k
/// triadic digits in {0, 2}.
inline IntervalSet cantor_level_from_digits(std::size_t k) {
  std::vector<Interval> raw;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 3, static_cast<unsigned long>(k));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    Integer x(0);
    for (std::size_t i = 0; i < k; ++i) x = x * 3 + (((mask >> (k - 1 - i)) & 1u) ? 2 : 0);
    Rational lo(x, scale), hi(x + 1, scale);
    lo.canonicalize();
    hi.canonicalize();
    raw.push_back({lo, hi});
  }
  return IntervalSet::normalize(std::move(raw));
}

}  // namespace ssf::testing
