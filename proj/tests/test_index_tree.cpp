#include "doctest.h"
#include "ssfractal/errors.hpp"
#include "ssfractal/index_tree.hpp"
#include "support/ball_packing.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/trees.hpp"

using namespace ssf;

namespace {

Rational q(const char* s) { return parse_rational(s); }

const Schedule full2 = Schedule::full(2);

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an ssf::Error");
  return ErrorKind::invalid_input;
}

}  // namespace

TEST_CASE("validate_tree") {
  CHECK(validate_tree(IndexTree::full_level(full2, 3).branches(), full2));
  CHECK(validate_tree({{1}, {2, 1}, {2, 2}}, full2));
  CHECK_FALSE(validate_tree({{1}}, full2));
  CHECK_FALSE(validate_tree({}, full2));
  CHECK_FALSE(validate_tree({{1}, {1, 2}, {2}}, full2));      // (1) is a prefix of (1,2)
  CHECK_FALSE(validate_tree({{1}, {1}, {2}}, full2));         // duplicate
  CHECK_FALSE(validate_tree({{1}, {2, 1}}, full2));            // (2,2) uncovered
  CHECK(kind_of([] { validate_tree({{1}, {3}}, full2); }) == ErrorKind::index_out_of_schedule);

  const auto sched = Schedule::periodic(2, {{1, 2}, {2}});
  CHECK(validate_tree({{1, 2}, {2, 2}}, sched));
  CHECK(kind_of([&] { validate_tree({{1, 1}, {2}}, sched); }) == ErrorKind::index_out_of_schedule);

  Branch deep(17, 1);
  CHECK(kind_of([&] { validate_tree({deep}, full2); }) == ErrorKind::depth_overflow);
  CHECK(kind_of([&] { validate_tree({{}}, full2); }) == ErrorKind::invalid_input);
  CHECK_THROWS_AS(IndexTree::from_branches({{1}}, full2), Error);
}

TEST_CASE("branch_bounds") {
  auto bounds = branch_bounds(IndexTree::from_branches({{1}, {2, 1}, {2, 2}}, full2));
  CHECK(bounds.shortest == 1);
  CHECK(bounds.longest == 2);
  bounds = branch_bounds(IndexTree::full_level(full2, 4));
  CHECK(bounds.shortest == 4);
  CHECK(bounds.longest == 4);
  bounds = branch_bounds(IndexTree::from_branches({{1, 1}, {1, 2}, {2}}, full2));
  CHECK(bounds.shortest == 1);
  CHECK(bounds.longest == 2);
}

TEST_CASE("stopping_tree examples") {
  const auto cantor = SimilitudeSystem::cantor();
  // 1/9 <= 1/4 < 1/3.
  auto tree = stopping_tree(cantor, full2, q("1/4"));
  CHECK(tree.branches() == IndexTree::full_level(full2, 2).branches());
  CHECK(stopping_tree(cantor, full2, q("1/2")).branches() == IndexTree::full_level(full2, 1).branches());

  const auto mixed = SimilitudeSystem({Similitude::make(q("1/2"), q("0")), Similitude::make(q("1/4"), q("3/4"))});
  tree = stopping_tree(mixed, full2, q("1/4"));
  CHECK(tree.branches() == std::vector<Branch>{{1, 1}, {1, 2}, {2}});
  CHECK(branch_ratio(mixed, {1, 2}) == q("1/8"));

  CHECK_THROWS_AS(stopping_tree(cantor, full2, q("1")), Error);
  CHECK_THROWS_AS(stopping_tree(cantor, full2, q("0")), Error);
  StoppingOptions shallow;
  shallow.max_depth = 3;
  CHECK(kind_of([&] { stopping_tree(cantor, full2, q("1/100"), shallow); }) == ErrorKind::depth_overflow);
}

TEST_CASE("stopping_tree matches brute force and the two-sided product bound") {
  testing::Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    const auto sys = testing::random_system(rng, 3);
    const auto sched = testing::random_schedule(rng, sys.size());
    const Rational rho = make_rational(std::uniform_int_distribution<long>(1, 15)(rng), 16);
    const auto tree = stopping_tree(sys, sched, rho);
    CHECK(validate_tree(tree.branches(), sched));
    const auto bounds = branch_bounds(tree);
    if (bounds.longest <= 10) {
      CHECK(tree.branches() == testing::brute_stopping_cut(sys, sched, rho, bounds.longest));
    }
    for (const auto& b : tree.branches()) {
      const Rational product = branch_ratio(sys, b);
      CHECK(product <= rho);
      CHECK(product >= sys.min_ratio() * rho);
      const Branch parent(b.begin(), b.end() - 1);
      CHECK(branch_ratio(sys, parent) > rho);
    }
  }
}

TEST_CASE("tree_sum") {
  const std::vector<Rational> ones{1, 1};
  for (std::size_t k = 1; k <= 6; ++k) {
    CHECK(tree_sum(IndexTree::full_level(full2, k), ones) == Rational(1u << k));
    CHECK(level_sum(full2, ones, k) == Rational(1u << k));
  }
  const std::vector<Rational> thirds{q("1/3"), q("1/3")};
  CHECK(tree_sum(IndexTree::from_branches({{1}, {2, 1}, {2, 2}}, full2), thirds) == q("5/9"));
  // Branches made only of index 1 vanish under a_1 = 0.
  const std::vector<Rational> zero_first{0, q("1/2")};
  CHECK(tree_sum(IndexTree::from_branches({{1, 1}, {1, 2}, {2}}, full2), zero_first) == q("1/2"));
  const std::vector<Rational> negative{q("-1/3"), q("1/3")};
  CHECK(kind_of([&] { tree_sum(IndexTree::full_level(full2, 2), negative); }) == ErrorKind::negative_weight);
  CHECK(kind_of([&] { level_sum(full2, negative, 2); }) == ErrorKind::negative_weight);
}

TEST_CASE("level_sum agrees with enumeration of L^k") {
  testing::Rng rng(12);
  for (int i = 0; i < 40; ++i) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const auto sched = testing::random_schedule(rng, m);
    std::vector<Rational> w;
    for (std::size_t j = 0; j < m; ++j) w.push_back(testing::random_rational(rng, 0, 2, 7));
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    Rational brute(0);
    for (const auto& s : testing::enumerate_sequences(sched, k)) {
      Rational term(1);
      for (auto j : s) term *= w[j - 1];
      brute += term;
    }
    CHECK(level_sum(sched, w, k) == brute);
  }
}

TEST_CASE("tree sums dominate the smallest level sum on random trees") {
  testing::Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const auto sched = testing::random_schedule(rng, m);
    const auto branches = testing::random_tree_branches(rng, sched, 6);
    REQUIRE(validate_tree(branches, sched));
    const auto tree = IndexTree::from_branches(branches, sched);
    std::vector<Rational> w;
    for (std::size_t j = 0; j < m; ++j) w.push_back(testing::random_rational(rng, 0, 2, 9));
    const auto bound = check_tree_sum_bound(tree, sched, w);
    CHECK(bound.holds());
    CHECK(bound.tree_total == tree_sum(tree, w));
  }
}

TEST_CASE("tree enumeration counts prefix codes") {
  // m = 2: G(0) = 1, G(d) = 1 + G(d-1)^2 subtrees; trees = G(q-1)^2.
  std::size_t count = 0;
  testing::for_each_tree(full2, 3, [&](const std::vector<Branch>& b) {
    CHECK(validate_tree(b, full2));
    ++count;
  });
  CHECK(count == 25);
  count = 0;
  testing::for_each_tree(Schedule::full(3), 2, [&](const std::vector<Branch>&) { ++count; });
  CHECK(count == 8);
}

TEST_CASE("1D ball packing bound") {
  testing::Rng rng(14);
  for (int i = 0; i < 2000; ++i) {
    const auto cfg = testing::random_ball_configuration(rng);
    CHECK(Rational(static_cast<long>(testing::closures_meeting_ball(cfg))) <= testing::ball_bound(cfg));
  }
}
