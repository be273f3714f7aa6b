#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ssfractal/ifs.hpp"
#include "ssfractal/rational.hpp"

namespace ssf {

// (j_1, ..., j_k) with 1-based map indices.
using Branch = std::vector<std::size_t>;

// Completeness checks recurse to the longest branch; beyond this depth they
// refuse with Error(depth_overflow).
inline constexpr std::size_t max_tree_check_depth = 16;

/// A finite set of index sequences such that every infinite branch of the
/// schedule's branch space has exactly one prefix in the set. Construction
/// goes through validate_tree, so an IndexTree is always valid with respect to
/// the schedule it was built for.
class IndexTree {
 public:
  /// Throws Error(invalid_input) if the branches are not a tree over `sched`,
  /// Error(index_out_of_schedule) if an index is not in its level's set.
  static IndexTree from_branches(std::vector<Branch> branches, const Schedule& sched);

  /// L^k.
  static IndexTree full_level(const Schedule& sched, std::size_t k);

  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }

 private:
  explicit IndexTree(std::vector<Branch> sorted) : branches_(std::move(sorted)) {}

  std::vector<Branch> branches_;
};

/// True iff the branches form an antichain that covers every infinite branch.
/// Throws Error(index_out_of_schedule) for indices outside N_i.
bool validate_tree(const std::vector<Branch>& branches, const Schedule& sched);

struct BranchBounds {
  std::size_t shortest = 0;
  std::size_t longest = 0;
};

BranchBounds branch_bounds(const IndexTree& tree);

struct StoppingOptions {
  std::size_t max_depth = 64;
  std::uint64_t leaf_budget = default_leaf_budget;
};

/// Cuts every branch at the least k with r_{j_1} ... r_{j_k} <= rho; each
/// resulting product then lies in [r_min * rho, rho].
IndexTree stopping_tree(const SimilitudeSystem& sys, const Schedule& sched, const Rational& rho,
                        const StoppingOptions& options = {});

/// r_{j_1} ... r_{j_k} for a branch.
Rational branch_ratio(const SimilitudeSystem& sys, const Branch& branch);

/// sum over branches of a_{j_1} ... a_{j_k}. Throws Error(negative_weight).
Rational tree_sum(const IndexTree& tree, std::span<const Rational> weights);

/// sum over L^k of a_{j_1} ... a_{j_k}, via prod_i sum_{j in N_i} a_j.
Rational level_sum(const Schedule& sched, std::span<const Rational> weights, std::size_t k);

struct TreeSumBound {
  Rational tree_total;
  Rational min_level_total;  // min over shortest <= k <= longest of level_sum
  std::size_t argmin_level = 0;
  BranchBounds bounds;
  bool holds() const { return tree_total >= min_level_total; }
};

/// Evaluates both sides of tree_sum(P) >= min_{p<=k<=q} level_sum(L^k).
TreeSumBound check_tree_sum_bound(const IndexTree& tree, const Schedule& sched, std::span<const Rational> weights);

}  // namespace ssf
