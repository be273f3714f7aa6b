#include "ssfractal/index_tree.hpp"

#include <algorithm>
#include <span>

#include "ssfractal/errors.hpp"

namespace ssf {

namespace {

using BranchRefs = std::vector<const Branch*>;

// Branches sharing the first `depth` indices. Valid iff exactly one of them is
// the prefix itself, or none is and every allowed child is covered.
bool covers(const BranchRefs& group, std::size_t depth, const Schedule& sched) {
  if (group.empty()) return false;
  const bool terminal = std::any_of(group.begin(), group.end(), [&](const Branch* b) { return b->size() == depth; });
  if (terminal) return group.size() == 1;
  for (std::size_t j : sched.at(depth + 1)) {
    BranchRefs child;
    for (const Branch* b : group) {
      if ((*b)[depth] == j) child.push_back(b);
    }
    if (!covers(child, depth + 1, sched)) return false;
  }
  return true;
}

void check_weights(std::span<const Rational> weights, std::size_t m) {
  if (weights.size() != m) {
    throw Error(ErrorKind::invalid_input, "expected " + std::to_string(m) + " weights, got " + std::to_string(weights.size()));
  }
  for (const auto& a : weights) {
    if (a < 0) throw Error(ErrorKind::negative_weight, "weight " + to_string(a) + " is negative");
  }
}

void cut(const SimilitudeSystem& sys, const Schedule& sched, const Rational& rho, const StoppingOptions& options,
         Branch& prefix, const Rational& product, std::vector<Branch>& out) {
  const std::size_t level = prefix.size() + 1;
  if (level > options.max_depth) {
    throw Error(ErrorKind::depth_overflow, "stopping rule needs depth beyond " + std::to_string(options.max_depth));
  }
  for (std::size_t j : sched.at(level)) {
    Rational next = product * sys.map(j).ratio;
    prefix.push_back(j);
    if (next <= rho) {
      if (out.size() >= options.leaf_budget) {
        throw Error(ErrorKind::depth_overflow, "stopping tree exceeds the leaf budget");
      }
      out.push_back(prefix);
    } else {
      cut(sys, sched, rho, options, prefix, next, out);
    }
    prefix.pop_back();
  }
}

}  // namespace

bool validate_tree(const std::vector<Branch>& branches, const Schedule& sched) {
  std::size_t longest = 0;
  for (const auto& b : branches) {
    if (b.empty()) throw Error(ErrorKind::invalid_input, "branches must be non-empty sequences");
    longest = std::max(longest, b.size());
  }
  if (longest > max_tree_check_depth) {
    throw Error(ErrorKind::depth_overflow, "tree checks are limited to branches of length <= " +
                                               std::to_string(max_tree_check_depth));
  }
  for (const auto& b : branches) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      const IndexSet& allowed = sched.at(i + 1);
      if (!std::binary_search(allowed.begin(), allowed.end(), b[i])) {
        throw Error(ErrorKind::index_out_of_schedule,
                    "index " + std::to_string(b[i]) + " at level " + std::to_string(i + 1) + " is not in N_" +
                        std::to_string(i + 1));
      }
    }
  }
  BranchRefs all;
  all.reserve(branches.size());
  for (const auto& b : branches) all.push_back(&b);
  return covers(all, 0, sched);
}

IndexTree IndexTree::from_branches(std::vector<Branch> branches, const Schedule& sched) {
  if (!validate_tree(branches, sched)) throw Error(ErrorKind::invalid_input, "branches do not form a tree");
  std::sort(branches.begin(), branches.end());
  return IndexTree(std::move(branches));
}

IndexTree IndexTree::full_level(const Schedule& sched, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::invalid_input, "L^k needs k >= 1");
  std::vector<Branch> level{Branch{}};
  for (std::size_t i = 1; i <= k; ++i) {
    std::vector<Branch> next;
    next.reserve(level.size() * sched.at(i).size());
    for (const auto& b : level) {
      for (std::size_t j : sched.at(i)) {
        next.push_back(b);
        next.back().push_back(j);
      }
    }
    level = std::move(next);
  }
  return IndexTree(std::move(level));
}

BranchBounds branch_bounds(const IndexTree& tree) {
  BranchBounds out{tree.branches().front().size(), tree.branches().front().size()};
  for (const auto& b : tree.branches()) {
    out.shortest = std::min(out.shortest, b.size());
    out.longest = std::max(out.longest, b.size());
  }
  return out;
}

IndexTree stopping_tree(const SimilitudeSystem& sys, const Schedule& sched, const Rational& rho,
                        const StoppingOptions& options) {
  if (!(rho > 0 && rho < 1)) throw Error(ErrorKind::invalid_input, "rho must lie in (0,1)");
  if (sched.num_maps() != sys.size()) throw Error(ErrorKind::invalid_input, "schedule and system disagree on m");
  std::vector<Branch> out;
  Branch prefix;
  cut(sys, sched, rho, options, prefix, Rational(1), out);
  return IndexTree::from_branches(std::move(out), sched);
}

Rational branch_ratio(const SimilitudeSystem& sys, const Branch& branch) {
  Rational product(1);
  for (std::size_t j : branch) product *= sys.map(j).ratio;
  return product;
}

Rational tree_sum(const IndexTree& tree, std::span<const Rational> weights) {
  for (const auto& a : weights) {
    if (a < 0) throw Error(ErrorKind::negative_weight, "weight " + to_string(a) + " is negative");
  }
  Rational total(0);
  for (const auto& b : tree.branches()) {
    Rational term(1);
    for (std::size_t j : b) {
      if (j < 1 || j > weights.size()) throw Error(ErrorKind::invalid_input, "no weight for map index " + std::to_string(j));
      term *= weights[j - 1];
    }
    total += term;
  }
  return total;
}

Rational level_sum(const Schedule& sched, std::span<const Rational> weights, std::size_t k) {
  check_weights(weights, sched.num_maps());
  Rational total(1);
  for (std::size_t i = 1; i <= k; ++i) {
    Rational factor(0);
    for (std::size_t j : sched.at(i)) factor += weights[j - 1];
    total *= factor;
  }
  return total;
}

TreeSumBound check_tree_sum_bound(const IndexTree& tree, const Schedule& sched, std::span<const Rational> weights) {
  check_weights(weights, sched.num_maps());
  TreeSumBound out;
  out.bounds = branch_bounds(tree);
  out.tree_total = tree_sum(tree, weights);
  for (std::size_t k = out.bounds.shortest; k <= out.bounds.longest; ++k) {
    Rational s = level_sum(sched, weights, k);
    if (k == out.bounds.shortest || s < out.min_level_total) {
      out.min_level_total = std::move(s);
      out.argmin_level = k;
    }
  }
  return out;
}

}  // namespace ssf
