#include "ssfractal/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <utility>

#include "ssfractal/errors.hpp"

namespace ssf::cantor {

namespace {

constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

bool is_power_of_three(Integer q) {
  while (q % 3 == 0) q /= 3;
  return q == 1;
}

void check_unit_interval(const Rational& a) {
  if (a < 0 || a > 1) throw Error(ErrorKind::out_of_range, to_string(a) + " is outside [0,1]");
  if (a > 0 && a < 1 && is_power_of_three(a.get_den())) {
    throw Error(ErrorKind::ambiguous_expansion, to_string(a) + " has two triadic expansions");
  }
}

}  // namespace

double cantor_dimension() { return std::log(2.0) / std::log(3.0); }
double intersection_dimension() { return std::log(2.0) / (3.0 * std::log(3.0)); }
double codimension_prediction() { return std::log(4.0) / std::log(3.0) - 1.0; }

std::uint8_t random_digit(std::uint64_t seed, std::size_t index) {
  // SplitMix64 evaluated at counter `index` of the stream keyed by mix(seed).
  const std::uint64_t key = mix64(seed + golden_gamma);
  const std::uint64_t h = mix64(key + golden_gamma * static_cast<std::uint64_t>(index));
  return static_cast<std::uint8_t>((static_cast<unsigned __int128>(h) * 3u) >> 64);
}

struct DigitStream::Impl {
  DigitSource source;
  Rational value;                       // rational
  std::vector<std::uint8_t> fixed;      // explicit digits
  std::uint64_t seed = 0;               // random

  mutable std::mutex mutex;
  mutable std::vector<std::uint8_t> digits;
  mutable std::vector<std::uint8_t> parity;  // parity[k-1] = s_k
  mutable Integer remainder;                 // long-division state for rational sources

  void ensure(std::size_t k) const {
    if (digits.size() >= k) return;
    if (source == DigitSource::explicit_digits && k > fixed.size()) {
      throw Error(ErrorKind::out_of_range, "digit " + std::to_string(k) + " requested from a stream of " +
                                               std::to_string(fixed.size()) + " digits");
    }
    digits.reserve(k);
    parity.reserve(k);
    while (digits.size() < k) {
      const std::size_t index = digits.size() + 1;
      std::uint8_t d = 0;
      switch (source) {
        case DigitSource::rational:
          if (value == 1) {
            d = 2;
          } else {
            remainder *= 3;
            Integer q = remainder / value.get_den();
            remainder -= q * value.get_den();
            d = static_cast<std::uint8_t>(q.get_ui());
          }
          break;
        case DigitSource::explicit_digits:
          d = fixed[index - 1];
          break;
        case DigitSource::random:
          d = random_digit(seed, index);
          break;
      }
      const std::uint8_t s = digits.empty() ? 0 : static_cast<std::uint8_t>((parity.back() + digits.back()) % 2);
      digits.push_back(d);
      parity.push_back(s);
    }
  }
};

DigitStream DigitStream::from_rational(const Rational& a) {
  check_unit_interval(a);
  auto impl = std::make_shared<Impl>();
  impl->source = DigitSource::rational;
  impl->value = a;
  impl->remainder = a.get_num();
  return DigitStream(std::move(impl));
}

DigitStream DigitStream::from_digits(std::vector<std::uint8_t> digits) {
  for (auto d : digits) {
    if (d > 2) throw Error(ErrorKind::invalid_input, "triadic digits must be 0, 1 or 2");
  }
  auto impl = std::make_shared<Impl>();
  impl->source = DigitSource::explicit_digits;
  impl->fixed = std::move(digits);
  return DigitStream(std::move(impl));
}

DigitStream DigitStream::random(std::uint64_t seed) {
  auto impl = std::make_shared<Impl>();
  impl->source = DigitSource::random;
  impl->seed = seed;
  return DigitStream(std::move(impl));
}

DigitSource DigitStream::source() const { return impl_->source; }

std::uint8_t DigitStream::digit(std::size_t k) const {
  if (k == 0) throw Error(ErrorKind::invalid_input, "digits are indexed from 1");
  std::lock_guard lock(impl_->mutex);
  impl_->ensure(k);
  return impl_->digits[k - 1];
}

int DigitStream::parity(std::size_t k) const {
  if (k == 0) throw Error(ErrorKind::invalid_input, "digits are indexed from 1");
  std::lock_guard lock(impl_->mutex);
  impl_->ensure(k);
  return impl_->parity[k - 1];
}

DigitState DigitStream::state(std::size_t k) const {
  if (k == 0) throw Error(ErrorKind::invalid_input, "digits are indexed from 1");
  std::lock_guard lock(impl_->mutex);
  impl_->ensure(k);
  return DigitState{static_cast<std::uint8_t>(impl_->digits[k - 1] + 3 * impl_->parity[k - 1])};
}

std::vector<std::uint8_t> DigitStream::digits(std::size_t k) const {
  std::lock_guard lock(impl_->mutex);
  impl_->ensure(k);
  return {impl_->digits.begin(), impl_->digits.begin() + static_cast<std::ptrdiff_t>(k)};
}

std::vector<DigitState> DigitStream::states(std::size_t k) const {
  std::lock_guard lock(impl_->mutex);
  impl_->ensure(k);
  std::vector<DigitState> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = DigitState{static_cast<std::uint8_t>(impl_->digits[i] + 3 * impl_->parity[i])};
  }
  return out;
}

std::optional<std::size_t> DigitStream::length() const {
  if (impl_->source == DigitSource::explicit_digits) return impl_->fixed.size();
  return std::nullopt;
}

std::optional<Rational> DigitStream::exact_value() const {
  if (impl_->source == DigitSource::rational) return impl_->value;
  return std::nullopt;
}

std::optional<std::uint64_t> DigitStream::seed() const {
  if (impl_->source == DigitSource::random) return impl_->seed;
  return std::nullopt;
}

Rational DigitStream::truncated_value(std::size_t k) const {
  const auto ds = digits(k);
  Integer num(0);
  for (auto d : ds) num = num * 3 + d;
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 3, static_cast<unsigned long>(k));
  Rational out(num, den);
  out.canonicalize();
  return out;
}

std::vector<std::uint8_t> digits_of_rational(const Integer& p, const Integer& q, std::size_t k) {
  if (q <= 0) throw Error(ErrorKind::invalid_input, "denominator must be positive");
  Rational a(p, q);
  a.canonicalize();
  return DigitStream::from_rational(a).digits(k);
}

std::vector<DigitState> classify(const DigitStream& stream, std::size_t k) { return stream.states(k); }

const IndexSet& selection_for(DigitState state) {
  static const std::array<IndexSet, num_states> table{
      IndexSet{1, 2},  // a_k = 0, class A
      IndexSet{2},     // a_k = 1, class A
      IndexSet{2},     // a_k = 2, class A
      IndexSet{1},     // a_k = 0, other class
      IndexSet{1},     // a_k = 1, other class
      IndexSet{1, 2},  // a_k = 2, other class
  };
  return table.at(state.value);
}

std::vector<IndexSet> selection_sets(const DigitStream& stream, std::size_t k) {
  std::vector<IndexSet> out;
  out.reserve(k);
  for (auto s : stream.states(k)) out.push_back(selection_for(s));
  return out;
}

Schedule digit_schedule(const DigitStream& stream) {
  return Schedule::from_rule(std::make_shared<DigitScheduleRule>(stream));
}

std::size_t f_count(const DigitStream& stream, std::size_t k) {
  const auto states = stream.states(k);
  return static_cast<std::size_t>(
      std::count_if(states.begin(), states.end(), [](DigitState s) { return s.value == 0 || s.value == 5; }));
}

std::optional<Rational> limit_branching_frequency(const DigitStream& stream, std::size_t max_steps) {
  const auto a = stream.exact_value();
  if (!a) return std::nullopt;
  if (*a == 1) return Rational(0);
  const Integer& q = a->get_den();
  // The pair (remainder before the digit, parity class) determines everything
  // that follows, so the first repeated pair closes the period.
  std::map<std::pair<std::string, int>, std::size_t> seen;
  std::vector<int> branching;
  Integer r = a->get_num();
  int s = 0;
  for (std::size_t step = 0; step < max_steps; ++step) {
    auto key = std::make_pair(r.get_str(16), s);
    if (auto it = seen.find(key); it != seen.end()) {
      const std::size_t start = it->second;
      std::size_t hits = 0;
      for (std::size_t i = start; i < branching.size(); ++i) hits += static_cast<std::size_t>(branching[i]);
      Rational out(static_cast<long>(hits), static_cast<long>(branching.size() - start));
      out.canonicalize();
      return out;
    }
    seen.emplace(std::move(key), step);
    r *= 3;
    Integer d = r / q;
    r -= d * q;
    const int digit = static_cast<int>(d.get_si());
    const int state = digit + 3 * s;
    branching.push_back(state == 0 || state == 5 ? 1 : 0);
    s = (s + digit) % 2;
  }
  return std::nullopt;
}

double closed_form_dimension(std::size_t f, std::size_t k) {
  if (k == 0) throw Error(ErrorKind::invalid_input, "depth must be positive");
  return static_cast<double>(f) / static_cast<double>(k) * cantor_dimension();
}

IntervalSet middle_third_level(std::size_t k) {
  std::vector<Interval> level{Interval{Rational(0), Rational(1)}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Interval> next;
    next.reserve(2 * level.size());
    for (const auto& iv : level) {
      const Rational third = (iv.hi - iv.lo) / 3;
      next.push_back({iv.lo, iv.lo + third});
      next.push_back({iv.hi - third, iv.hi});
    }
    level = std::move(next);
  }
  return IntervalSet::normalize(std::move(level));
}

namespace {

constexpr std::size_t oracle_lookahead = 64;

// Truncation at the first depth past k with a nonzero digit, which keeps the
// point off the 3^-k grid; a^(k) itself when no such digit is available.
Rational oracle_point(const DigitStream& stream, std::size_t k) {
  if (stream.exact_value()) return *stream.exact_value();
  std::size_t limit = k + oracle_lookahead;
  if (auto len = stream.length()) limit = std::min(limit, *len);
  for (std::size_t n = k + 1; n <= limit; ++n) {
    if (stream.digit(n) != 0) return stream.truncated_value(n);
  }
  return stream.truncated_value(k);
}

}  // namespace

IntervalSet intersection_oracle(const DigitStream& stream, std::size_t k) {
  const Rational a = oracle_point(stream, k);
  const IntervalSet level = middle_third_level(k);
  return intersect(level, level.translated(a));
}

SandwichCheck check_sandwich(const DigitStream& stream, std::size_t k, Execution execution) {
  const IntervalSet oracle = intersection_oracle(stream, k);
  IterateOptions options;
  options.execution = execution;
  const IntervalSet approx =
      iterate(SimilitudeSystem::cantor(), digit_schedule(stream), k, IntervalSet::closed(0, 1), options);
  SandwichCheck out;
  out.oracle_inside_iterate = approx.contains(oracle);
  out.iterate_inside_body = !oracle.empty() && parallel_body(oracle, pow(make_rational(1, 3), k)).contains(approx);
  return out;
}

MarkovEstimate markov_empirical(const DigitStream& stream, std::size_t k) {
  if (k < 2) throw Error(ErrorKind::invalid_input, "need at least two digits for transitions");
  const auto states = stream.states(k);
  MarkovEstimate out;
  out.length = k;
  std::array<std::uint64_t, num_states> visits{};
  for (std::size_t i = 0; i < k; ++i) {
    ++visits[states[i].value];
    if (i + 1 < k) ++out.counts[states[i].value][states[i + 1].value];
  }
  for (std::size_t i = 0; i < num_states; ++i) {
    std::uint64_t row = 0;
    for (auto c : out.counts[i]) row += c;
    for (std::size_t j = 0; j < num_states; ++j) {
      out.transition[i][j] = row == 0 ? 0.0 : static_cast<double>(out.counts[i][j]) / static_cast<double>(row);
    }
    out.frequency[i] = static_cast<double>(visits[i]) / static_cast<double>(k);
  }
  return out;
}

std::array<std::array<double, num_states>, num_states> reference_transition_matrix() {
  std::array<std::array<double, num_states>, num_states> p{};
  for (std::size_t i = 0; i < num_states; ++i) {
    // Digit 1 flips the parity class; 0 and 2 keep it.
    const int next_class = (static_cast<int>(i / 3) + static_cast<int>(i % 3)) % 2;
    for (std::size_t j = 0; j < num_states; ++j) {
      p[i][j] = static_cast<int>(j / 3) == next_class ? 1.0 / 3.0 : 0.0;
    }
  }
  return p;
}

namespace {

template <typename Field>
SummaryStats summarize(const std::vector<SampleRow>& rows, Field field) {
  SummaryStats out;
  if (rows.empty()) return out;
  out.min = out.max = field(rows.front());
  double sum = 0.0;
  for (const auto& r : rows) {
    const double v = field(r);
    sum += v;
    out.min = std::min(out.min, v);
    out.max = std::max(out.max, v);
  }
  out.mean = sum / static_cast<double>(rows.size());
  if (rows.size() > 1) {
    double ss = 0.0;
    for (const auto& r : rows) ss += (field(r) - out.mean) * (field(r) - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(rows.size() - 1));
  }
  return out;
}

SampleRow run_sample(const MonteCarloConfig& config, const StreamFactory& factory, std::size_t index) {
  SampleRow row;
  row.index = index;
  row.seed = config.seed + index;
  row.depth = config.depth;
  const DigitStream stream = factory ? factory(row.seed) : DigitStream::random(row.seed);
  row.f = f_count(stream, config.depth);
  row.f_over_k = static_cast<double>(row.f) / static_cast<double>(config.depth);
  row.s_hat = closed_form_dimension(row.f, config.depth);
  return row;
}

}  // namespace

MonteCarloSummary monte_carlo_dimension(const MonteCarloConfig& config, const StreamFactory& factory) {
  if (config.samples < 1) throw Error(ErrorKind::invalid_input, "need at least one sample");
  if (config.depth < 1000) throw Error(ErrorKind::invalid_input, "Monte Carlo depth must be at least 1000");
  MonteCarloSummary out;
  out.config = config;
  out.rows.resize(config.samples);
  const auto n = static_cast<std::ptrdiff_t>(config.samples);
  if (config.execution == Execution::parallel) {
    std::exception_ptr failure;
    std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      try {
        out.rows[static_cast<std::size_t>(i)] = run_sample(config, factory, static_cast<std::size_t>(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      out.rows[static_cast<std::size_t>(i)] = run_sample(config, factory, static_cast<std::size_t>(i));
    }
  }
  out.f_over_k = summarize(out.rows, [](const SampleRow& r) { return r.f_over_k; });
  out.s_hat = summarize(out.rows, [](const SampleRow& r) { return r.s_hat; });
  return out;
}

}  // namespace ssf::cantor
