#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ssfractal/ifs.hpp"
#include "ssfractal/interval_set.hpp"
#include "ssfractal/rational.hpp"

namespace ssf::testing {

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, long lo_num, long hi_num, long max_den) {
  std::uniform_int_distribution<long> den_dist(1, max_den);
  const long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(lo_num * den, hi_num * den);
  return make_rational(num_dist(rng), den);
}

/// 1..max_intervals random intervals inside [-2, 3], some degenerate.
inline IntervalSet random_interval_set(Rng& rng, int max_intervals = 5, long max_den = 12) {
  std::uniform_int_distribution<int> count(1, max_intervals);
  std::bernoulli_distribution degenerate(0.15);
  std::vector<Interval> raw;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Rational a = random_rational(rng, -2, 3, max_den);
    Rational b = degenerate(rng) ? a : random_rational(rng, -2, 3, max_den);
    if (b < a) std::swap(a, b);
    raw.push_back({a, b});
  }
  return IntervalSet::normalize(std::move(raw));
}

inline Similitude random_similitude(Rng& rng, long max_den = 7) {
  std::uniform_int_distribution<long> den_dist(2, max_den);
  const long den = den_dist(rng);
  std::uniform_int_distribution<long> num_dist(1, den - 1);
  std::bernoulli_distribution flip(0.3);
  return Similitude::make(make_rational(num_dist(rng), den), random_rational(rng, -1, 2, 6), flip(rng) ? -1 : 1);
}

inline SimilitudeSystem random_system(Rng& rng, std::size_t max_maps = 3) {
  std::uniform_int_distribution<std::size_t> count(1, max_maps);
  std::vector<Similitude> maps;
  const std::size_t m = count(rng);
  for (std::size_t j = 0; j < m; ++j) maps.push_back(random_similitude(rng));
  return SimilitudeSystem(std::move(maps));
}

inline IndexSet random_index_set(Rng& rng, std::size_t m) {
  IndexSet out;
  while (out.empty()) {
    for (std::size_t j = 1; j <= m; ++j) {
      if (std::bernoulli_distribution(0.6)(rng)) out.push_back(j);
    }
  }
  return out;
}

/// Full with probability 1/3, otherwise periodic with period 1..4.
inline Schedule random_schedule(Rng& rng, std::size_t m) {
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) return Schedule::full(m);
  std::vector<IndexSet> sets(std::uniform_int_distribution<std::size_t>(1, 4)(rng));
  for (auto& s : sets) s = random_index_set(rng, m);
  return Schedule::periodic(m, std::move(sets));
}

}  // namespace ssf::testing
