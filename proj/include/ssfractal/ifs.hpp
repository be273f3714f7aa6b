#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "ssfractal/execution.hpp"
#include "ssfractal/interval_set.hpp"
#include "ssfractal/rational.hpp"

namespace ssf {

/// x -> orientation * ratio * x + translation, with 0 < ratio < 1.
struct Similitude {
  Rational ratio;
  Rational translation;
  int orientation = 1;

  /// Validating constructor: throws Error(invalid_input) unless 0 < r < 1 and
  /// sigma is +1 or -1.
  static Similitude make(const Rational& r, const Rational& b, int sigma = 1);

  Rational operator()(const Rational& x) const;
};

IntervalSet apply(const Similitude& map, const IntervalSet& e);

class SimilitudeSystem {
 public:
  explicit SimilitudeSystem(std::vector<Similitude> maps);

  /// x/3 and x/3 + 2/3.
  static SimilitudeSystem cantor();

  std::size_t size() const { return maps_.size(); }
  std::span<const Similitude> maps() const { return maps_; }
  /// 1-based, matching schedule indices.
  const Similitude& map(std::size_t j) const { return maps_.at(j - 1); }
  const Rational& max_ratio() const { return max_ratio_; }
  const Rational& min_ratio() const { return min_ratio_; }

 private:
  std::vector<Similitude> maps_;
  Rational max_ratio_;
  Rational min_ratio_;
};

// Sorted, duplicate-free, 1-based map indices.
using IndexSet = std::vector<std::size_t>;

/// Source of the per-level selection sets N_k. Implementations must be
/// deterministic and safe to query concurrently.
class ScheduleRule {
 public:
  virtual ~ScheduleRule() = default;
  virtual std::size_t num_maps() const = 0;
  /// level >= 1.
  virtual const IndexSet& at(std::size_t level) const = 0;
  virtual std::string_view kind() const = 0;
};

class PeriodicScheduleRule final : public ScheduleRule {
 public:
  PeriodicScheduleRule(std::size_t m, std::vector<IndexSet> sets) : m_(m), sets_(std::move(sets)) {}
  std::size_t num_maps() const override { return m_; }
  const IndexSet& at(std::size_t level) const override { return sets_[(level - 1) % sets_.size()]; }
  std::string_view kind() const override { return "periodic"; }
  const std::vector<IndexSet>& sets() const { return sets_; }

 private:
  std::size_t m_;
  std::vector<IndexSet> sets_;
};

class Schedule {
 public:
  /// N_k = {1..m} at every level (classical self-similar set).
  static Schedule full(std::size_t m);
  /// N_k = sets[(k-1) mod sets.size()].
  static Schedule periodic(std::size_t m, std::vector<IndexSet> sets);
  static Schedule from_rule(std::shared_ptr<const ScheduleRule> rule);

  std::size_t num_maps() const { return rule_->num_maps(); }
  const IndexSet& at(std::size_t level) const;
  std::vector<IndexSet> prefix(std::size_t k) const;
  std::string_view kind() const { return rule_->kind(); }
  const ScheduleRule& rule() const { return *rule_; }

 private:
  explicit Schedule(std::shared_ptr<const ScheduleRule> rule) : rule_(std::move(rule)) {}

  std::shared_ptr<const ScheduleRule> rule_;
};

/// Throws Error(invalid_input) if the set is empty, unsorted, or has an index
/// outside 1..m.
void validate_index_set(const IndexSet& set, std::size_t m);

/// |L^k| = prod_{i<=k} |N_i|.
Integer leaf_count(const Schedule& sched, std::size_t k);

inline constexpr std::uint64_t default_leaf_budget = std::uint64_t{1} << 24;

struct IterateOptions {
  std::uint64_t leaf_budget = default_leaf_budget;
  Execution execution = Execution::parallel;
};

/// psi^k(F): the union over (j_1..j_k) in L^k of psi_{j_1} o ... o psi_{j_k}(F),
/// built by depth-first composition. Throws Error(depth_overflow) when |L^k|
/// exceeds the leaf budget.
IntervalSet iterate(const SimilitudeSystem& sys, const Schedule& sched, std::size_t k, const IntervalSet& f,
                    const IterateOptions& options = {});

struct Convergence {
  std::size_t depth = 0;
  IntervalSet approx;
  /// r^depth * M / (1 - r); certifies d(approx, E) <= bound.
  Rational bound;
};

/// Smallest depth whose contraction bound r^k M/(1-r), M = max_j d(F, psi_j(F)),
/// is at most tol.
Convergence converge(const SimilitudeSystem& sys, const Schedule& sched, const IntervalSet& f, const Rational& tol,
                     const IterateOptions& options = {});

/// Max over j of d(F, psi_j(F)).
Rational displacement(const SimilitudeSystem& sys, const IntervalSet& f);

struct OpenSetCheck {
  bool maps_into = false;  // psi_j((lo,hi)) inside (lo,hi) for all j
  bool disjoint = false;   // images pairwise disjoint
  bool holds() const { return maps_into && disjoint; }
};

/// Open set condition restricted to V = (lo, hi).
OpenSetCheck check_open_set_condition(const SimilitudeSystem& sys, const Rational& lo, const Rational& hi);

}  // namespace ssf
