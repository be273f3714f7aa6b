#include "ssfractal/ifs.hpp"

#include <algorithm>
#include <utility>

#include "ssfractal/errors.hpp"

namespace ssf {

namespace {

class FullRule final : public ScheduleRule {
 public:
  explicit FullRule(std::size_t m) : m_(m), all_(m) {
    for (std::size_t j = 0; j < m; ++j) all_[j] = j + 1;
  }
  std::size_t num_maps() const override { return m_; }
  const IndexSet& at(std::size_t) const override { return all_; }
  std::string_view kind() const override { return "full"; }

 private:
  std::size_t m_;
  IndexSet all_;
};

// x -> scale * x + shift, where scale carries the orientation.
struct Affine {
  Rational scale{1};
  Rational shift{0};

  Affine then_inner(const Similitude& s) const {
    Affine out;
    out.scale = scale * s.ratio;
    if (s.orientation < 0) out.scale = -out.scale;
    out.shift = scale * s.translation + shift;
    return out;
  }
};

void emit_images(const Affine& a, const IntervalSet& f, std::vector<Interval>& out) {
  for (const auto& iv : f.intervals()) {
    Rational x = a.scale * iv.lo + a.shift;
    Rational y = a.scale * iv.hi + a.shift;
    if (a.scale < 0) std::swap(x, y);
    out.push_back({std::move(x), std::move(y)});
  }
}

void expand(const SimilitudeSystem& sys, const Schedule& sched, std::size_t level, std::size_t k, const Affine& a,
            const IntervalSet& f, std::vector<Interval>& out) {
  if (level > k) {
    emit_images(a, f, out);
    return;
  }
  for (std::size_t j : sched.at(level)) expand(sys, sched, level + 1, k, a.then_inner(sys.map(j)), f, out);
}

void check_compatible(const SimilitudeSystem& sys, const Schedule& sched) {
  if (sched.num_maps() != sys.size()) {
    throw Error(ErrorKind::invalid_input, "schedule is over " + std::to_string(sched.num_maps()) +
                                              " maps but the system has " + std::to_string(sys.size()));
  }
}

void check_budget(const Schedule& sched, std::size_t k, std::uint64_t budget) {
  const Integer leaves = leaf_count(sched, k);
  if (leaves > Integer(std::to_string(budget))) {
    throw Error(ErrorKind::depth_overflow, "|L^" + std::to_string(k) + "| = " + leaves.get_str() +
                                               " exceeds the leaf budget " + std::to_string(budget));
  }
}

}  // namespace

Similitude Similitude::make(const Rational& r, const Rational& b, int sigma) {
  if (!(r > 0 && r < 1)) throw Error(ErrorKind::invalid_input, "similitude ratio must lie in (0,1), got " + to_string(r));
  if (sigma != 1 && sigma != -1) throw Error(ErrorKind::invalid_input, "orientation must be +1 or -1");
  return Similitude{r, b, sigma};
}

Rational Similitude::operator()(const Rational& x) const {
  Rational y = ratio * x;
  if (orientation < 0) y = -y;
  return y + translation;
}

IntervalSet apply(const Similitude& map, const IntervalSet& e) {
  if (e.empty()) throw Error(ErrorKind::empty_set, "apply requires a non-empty set");
  std::vector<Interval> out;
  out.reserve(e.size());
  for (const auto& iv : e.intervals()) {
    Rational x = map(iv.lo);
    Rational y = map(iv.hi);
    if (map.orientation < 0) std::swap(x, y);
    out.push_back({std::move(x), std::move(y)});
  }
  return IntervalSet::normalize(std::move(out));
}

SimilitudeSystem::SimilitudeSystem(std::vector<Similitude> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw Error(ErrorKind::invalid_input, "a similitude system needs at least one map");
  for (const auto& s : maps_) (void)Similitude::make(s.ratio, s.translation, s.orientation);
  max_ratio_ = maps_.front().ratio;
  min_ratio_ = maps_.front().ratio;
  for (const auto& s : maps_) {
    if (s.ratio > max_ratio_) max_ratio_ = s.ratio;
    if (s.ratio < min_ratio_) min_ratio_ = s.ratio;
  }
}

SimilitudeSystem SimilitudeSystem::cantor() {
  return SimilitudeSystem({Similitude::make(make_rational(1, 3), Rational(0)),
                           Similitude::make(make_rational(1, 3), make_rational(2, 3))});
}

void validate_index_set(const IndexSet& set, std::size_t m) {
  if (set.empty()) throw Error(ErrorKind::invalid_input, "selection sets must be non-empty");
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] < 1 || set[i] > m) {
      throw Error(ErrorKind::invalid_input, "map index " + std::to_string(set[i]) + " outside 1.." + std::to_string(m));
    }
    if (i > 0 && set[i - 1] >= set[i]) throw Error(ErrorKind::invalid_input, "selection sets must be sorted and unique");
  }
}

Schedule Schedule::full(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::invalid_input, "schedule needs m >= 1");
  return Schedule(std::make_shared<FullRule>(m));
}

Schedule Schedule::periodic(std::size_t m, std::vector<IndexSet> sets) {
  if (m == 0) throw Error(ErrorKind::invalid_input, "schedule needs m >= 1");
  if (sets.empty()) throw Error(ErrorKind::invalid_input, "periodic schedule needs at least one set");
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    validate_index_set(s, m);
  }
  return Schedule(std::make_shared<PeriodicScheduleRule>(m, std::move(sets)));
}

Schedule Schedule::from_rule(std::shared_ptr<const ScheduleRule> rule) {
  if (!rule) throw Error(ErrorKind::invalid_input, "null schedule rule");
  return Schedule(std::move(rule));
}

const IndexSet& Schedule::at(std::size_t level) const {
  if (level == 0) throw Error(ErrorKind::invalid_input, "schedule levels start at 1");
  return rule_->at(level);
}

std::vector<IndexSet> Schedule::prefix(std::size_t k) const {
  std::vector<IndexSet> out;
  out.reserve(k);
  for (std::size_t level = 1; level <= k; ++level) out.push_back(at(level));
  return out;
}

Integer leaf_count(const Schedule& sched, std::size_t k) {
  Integer count(1);
  for (std::size_t level = 1; level <= k; ++level) count *= static_cast<unsigned long>(sched.at(level).size());
  return count;
}

IntervalSet iterate(const SimilitudeSystem& sys, const Schedule& sched, std::size_t k, const IntervalSet& f,
                    const IterateOptions& options) {
  if (f.empty()) throw Error(ErrorKind::empty_set, "iterate requires a non-empty seed");
  check_compatible(sys, sched);
  if (k == 0) return f;
  check_budget(sched, k, options.leaf_budget);

  std::vector<Interval> leaves;
  if (options.execution == Execution::serial) {
    expand(sys, sched, 1, k, Affine{}, f, leaves);
    return IntervalSet::normalize(std::move(leaves));
  }

  // Breadth-first until there is enough independent work per thread, then a
  // depth-first expansion of each frontier node.
  const std::size_t target = 8 * static_cast<std::size_t>(max_threads());
  std::vector<Affine> frontier{Affine{}};
  std::size_t level = 1;
  while (level <= k && frontier.size() < target) {
    std::vector<Affine> next;
    next.reserve(frontier.size() * sched.at(level).size());
    for (const auto& a : frontier) {
      for (std::size_t j : sched.at(level)) next.push_back(a.then_inner(sys.map(j)));
    }
    frontier = std::move(next);
    ++level;
  }

  std::vector<std::vector<Interval>> parts(frontier.size());
  const auto n = static_cast<std::ptrdiff_t>(frontier.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    expand(sys, sched, level, k, frontier[static_cast<std::size_t>(i)], f, parts[static_cast<std::size_t>(i)]);
  }
  std::size_t total = 0;
  for (const auto& p : parts) total += p.size();
  leaves.reserve(total);
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(leaves));
  return IntervalSet::normalize(std::move(leaves));
}

Rational displacement(const SimilitudeSystem& sys, const IntervalSet& f) {
  Rational worst(0);
  for (const auto& s : sys.maps()) {
    Rational d = hausdorff_distance(f, apply(s, f));
    if (d > worst) worst = std::move(d);
  }
  return worst;
}

Convergence converge(const SimilitudeSystem& sys, const Schedule& sched, const IntervalSet& f, const Rational& tol,
                     const IterateOptions& options) {
  if (f.empty()) throw Error(ErrorKind::empty_set, "converge requires a non-empty seed");
  if (tol <= 0) throw Error(ErrorKind::invalid_input, "tolerance must be positive");
  check_compatible(sys, sched);
  const Rational& r = sys.max_ratio();
  Convergence out;
  out.bound = displacement(sys, f) / (1 - r);
  while (out.bound > tol) {
    ++out.depth;
    out.bound *= r;
    check_budget(sched, out.depth, options.leaf_budget);
  }
  out.approx = iterate(sys, sched, out.depth, f, options);
  return out;
}

OpenSetCheck check_open_set_condition(const SimilitudeSystem& sys, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw Error(ErrorKind::invalid_input, "open set (lo, hi) needs lo < hi");
  std::vector<Interval> images;
  for (const auto& s : sys.maps()) {
    Rational x = s(lo), y = s(hi);
    if (x > y) std::swap(x, y);
    images.push_back({x, y});
  }
  OpenSetCheck out;
  out.maps_into = std::all_of(images.begin(), images.end(),
                              [&](const Interval& iv) { return iv.lo >= lo && iv.hi <= hi; });
  std::sort(images.begin(), images.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  out.disjoint = true;
  // Open images may share an endpoint.
  for (std::size_t i = 0; i + 1 < images.size(); ++i) {
    if (images[i].hi > images[i + 1].lo) out.disjoint = false;
  }
  return out;
}

}  // namespace ssf
