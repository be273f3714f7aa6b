#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ssfractal/execution.hpp"
#include "ssfractal/ifs.hpp"
#include "ssfractal/interval_set.hpp"

namespace ssf {

enum class EstimateMethod { formula, box_counting };

const char* to_string(EstimateMethod method);

struct DimensionEstimate {
  double s_hat = 0.0;
  std::size_t horizon = 0;
  // Inclusive depth range for the formula; inclusive scale index range for box counting.
  std::pair<std::size_t, std::size_t> window{0, 0};
  // Formula: g(s_hat). Box counting: RMS residual of the log-log fit.
  double residual = 0.0;
  EstimateMethod method = EstimateMethod::formula;
};

/// ln sum_{L^k} (r_{j_1} ... r_{j_k})^t, using the factorization
/// prod_{i<=k} sum_{j in N_i} r_j^t. O(k m); L^k is never enumerated.
double partial_sum_log(const SimilitudeSystem& sys, const Schedule& sched, std::size_t k, double t);

/// Per-level terms ln sum_{j in N_i} r_j^t for i = 1..k.
std::vector<double> level_log_terms(const SimilitudeSystem& sys, const Schedule& sched, std::size_t k, double t);

inline constexpr double default_window_fraction = 0.5;
inline constexpr double default_dimension_tol = 1e-9;
inline constexpr std::size_t min_horizon = 10;

/// Root in t of g(t) = min over k in [ceil((1 - wf) K), K] of
/// partial_sum_log(k, t) / k. Each per-level term is strictly decreasing in t,
/// so g is too and the root is unique. The window minimum stands in for the
/// tail infimum of the liminf.
DimensionEstimate estimate_dimension(const SimilitudeSystem& sys, const Schedule& sched, std::size_t horizon,
                                     double window_fraction = default_window_fraction,
                                     double tol = default_dimension_tol);

/// Number of grid cells [i eps, (i+1) eps] met by e. A positive-length interval
/// meets the cells whose interior it meets; an isolated point counts the cell
/// [i eps, (i+1) eps) containing it.
Integer box_count(const IntervalSet& e, const Rational& eps);

/// Least-squares slope of ln N(eps) against ln(1/eps). `scales` strictly
/// decreasing and positive; at least three.
DimensionEstimate box_counting_dimension(const IntervalSet& e, std::span<const Rational> scales,
                                         Execution execution = Execution::parallel);

}  // namespace ssf
