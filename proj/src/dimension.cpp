#include "ssfractal/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ssfractal/errors.hpp"

namespace ssf {

namespace {

struct Window {
  std::size_t first;
  std::size_t last;
};

// Per-level ratio lists, read once from the schedule.
std::vector<std::vector<double>> level_ratios(const SimilitudeSystem& sys, const Schedule& sched, std::size_t k) {
  std::vector<double> r(sys.size());
  for (std::size_t j = 0; j < sys.size(); ++j) r[j] = sys.maps()[j].ratio.get_d();
  std::vector<std::vector<double>> out(k);
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j : sched.at(i)) out[i - 1].push_back(r[j - 1]);
  }
  return out;
}

double level_term(const std::vector<double>& ratios, double t) {
  double sum = 0.0;
  for (double r : ratios) sum += std::pow(r, t);
  return std::log(sum);
}

double window_min(const std::vector<std::vector<double>>& levels, Window w, double t) {
  double cumulative = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k <= w.last; ++k) {
    cumulative += level_term(levels[k - 1], t);
    if (k >= w.first) best = std::min(best, cumulative / static_cast<double>(k));
  }
  return best;
}

Integer count_cells(const IntervalSet& e, const Rational& eps) {
  // Inclusive cell-index ranges, merged as they arrive in increasing order.
  Integer total(0);
  bool open = false;
  Integer run_lo, run_hi;
  for (const auto& iv : e.intervals()) {
    Integer lo = floor(Rational(iv.lo / eps));
    Integer hi = iv.lo == iv.hi ? lo : Integer(ceil(Rational(iv.hi / eps)) - 1);
    if (open && lo <= run_hi) {
      if (hi > run_hi) run_hi = hi;
      continue;
    }
    if (open) total += run_hi - run_lo + 1;
    run_lo = lo;
    run_hi = hi;
    open = true;
  }
  if (open) total += run_hi - run_lo + 1;
  return total;
}

}  // namespace

const char* to_string(EstimateMethod method) {
  return method == EstimateMethod::formula ? "formula" : "box_counting";
}

std::vector<double> level_log_terms(const SimilitudeSystem& sys, const Schedule& sched, std::size_t k, double t) {
  if (sched.num_maps() != sys.size()) throw Error(ErrorKind::invalid_input, "schedule and system disagree on m");
  const auto levels = level_ratios(sys, sched, k);
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = level_term(levels[i], t);
  return out;
}

double partial_sum_log(const SimilitudeSystem& sys, const Schedule& sched, std::size_t k, double t) {
  if (k == 0) throw Error(ErrorKind::invalid_input, "partial sums start at k = 1");
  if (t < 0) throw Error(ErrorKind::invalid_input, "t must be non-negative");
  double total = 0.0;
  for (double term : level_log_terms(sys, sched, k, t)) total += term;
  return total;
}

DimensionEstimate estimate_dimension(const SimilitudeSystem& sys, const Schedule& sched, std::size_t horizon,
                                     double window_fraction, double tol) {
  if (horizon < min_horizon) {
    throw Error(ErrorKind::horizon_too_small, "horizon " + std::to_string(horizon) + " < " + std::to_string(min_horizon));
  }
  if (!(window_fraction > 0.0 && window_fraction <= 1.0)) {
    throw Error(ErrorKind::invalid_input, "window fraction must lie in (0, 1]");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_input, "tolerance must be positive");
  if (sched.num_maps() != sys.size()) throw Error(ErrorKind::invalid_input, "schedule and system disagree on m");

  const auto levels = level_ratios(sys, sched, horizon);
  const auto first = static_cast<std::size_t>(std::ceil((1.0 - window_fraction) * static_cast<double>(horizon)));
  const Window w{std::max<std::size_t>(1, first), horizon};

  // Every per-level factor is at most m r_max^t, so g <= 0 from ln m / ln(1/r_max) on.
  double lo = 0.0;
  double hi = std::log(static_cast<double>(sys.size())) / std::log(1.0 / sys.max_ratio().get_d());
  double g_lo = window_min(levels, w, lo);
  DimensionEstimate out;
  out.horizon = horizon;
  out.window = {w.first, w.last};
  out.method = EstimateMethod::formula;
  if (g_lo <= 0.0) {
    // Only singletons in the window: the sums never exceed 1.
    out.s_hat = 0.0;
    out.residual = g_lo;
    return out;
  }
  double mid = 0.5 * (lo + hi);
  double g_mid = window_min(levels, w, mid);
  for (int iter = 0; iter < 200 && (hi - lo >= tol || std::abs(g_mid) > tol); ++iter) {
    if (g_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double next = 0.5 * (lo + hi);
    if (next == mid) break;
    mid = next;
    g_mid = window_min(levels, w, mid);
  }
  out.s_hat = mid;
  out.residual = g_mid;
  return out;
}

Integer box_count(const IntervalSet& e, const Rational& eps) {
  if (e.empty()) throw Error(ErrorKind::empty_set, "box counting requires a non-empty set");
  if (eps <= 0) throw Error(ErrorKind::invalid_input, "box size must be positive");
  return count_cells(e, eps);
}

DimensionEstimate box_counting_dimension(const IntervalSet& e, std::span<const Rational> scales, Execution execution) {
  if (e.empty()) throw Error(ErrorKind::empty_set, "box counting requires a non-empty set");
  if (scales.size() < 3) throw Error(ErrorKind::too_few_scales, "need at least 3 scales, got " + std::to_string(scales.size()));
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (scales[i] <= 0) throw Error(ErrorKind::invalid_input, "scales must be positive");
    if (i > 0 && !(scales[i] < scales[i - 1])) throw Error(ErrorKind::invalid_input, "scales must be strictly decreasing");
  }

  const auto n = static_cast<std::ptrdiff_t>(scales.size());
  std::vector<double> x(scales.size()), y(scales.size());
  if (execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      x[u] = -std::log(scales[u].get_d());
      y[u] = std::log(count_cells(e, scales[u]).get_d());
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      x[u] = -std::log(scales[u].get_d());
      y[u] = std::log(count_cells(e, scales[u]).get_d());
    }
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(y.size());
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (my + slope * (x[i] - mx));
    ss += r * r;
  }

  DimensionEstimate out;
  out.s_hat = slope;
  out.horizon = scales.size();
  out.window = {0, scales.size() - 1};
  out.residual = std::sqrt(ss / static_cast<double>(x.size()));
  out.method = EstimateMethod::box_counting;
  return out;
}

}  // namespace ssf
