#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ssfractal/execution.hpp"
#include "ssfractal/ifs.hpp"
#include "ssfractal/interval_set.hpp"
#include "ssfractal/rational.hpp"

namespace ssf::cantor {

// ln2 / ln3: dimension of the middle-third Cantor set.
double cantor_dimension();
// ln2 / (3 ln3): almost-sure dimension of K intersected with K + a.
double intersection_dimension();
// ln4 / ln3 - 1: what additivity of codimensions would predict for that intersection.
double codimension_prediction();

/// Digit a_k together with its parity class: value = digit + 3 * s_k, where
/// s_k = (a_0 + ... + a_{k-1}) mod 2 and a_0 = 0. Class 0 is A(a), class 1 is
/// the complementary class.
struct DigitState {
  std::uint8_t value = 0;

  int digit() const { return value % 3; }
  int parity_class() const { return value / 3; }
  bool operator==(const DigitState&) const = default;
};

enum class DigitSource { rational, explicit_digits, random };

/// Base-3 digits a_1, a_2, ... of a point of [0,1], with the running parity.
/// Copies share one lazily filled, mutex-guarded cache; all queries are
/// deterministic in the source and safe from several threads.
class DigitStream {
 public:
  /// Throws Error(out_of_range) outside [0,1] and Error(ambiguous_expansion)
  /// for interior points with a terminating expansion. 0 and 1 are admitted as
  /// the all-0 and all-2 streams.
  static DigitStream from_rational(const Rational& a);
  /// A finite prefix; reading past its end throws Error(out_of_range).
  static DigitStream from_digits(std::vector<std::uint8_t> digits);
  /// Uniform i.i.d. digits from a counter-based generator keyed by `seed`.
  static DigitStream random(std::uint64_t seed);

  DigitSource source() const;
  std::uint8_t digit(std::size_t k) const;
  /// s_k, k >= 1.
  int parity(std::size_t k) const;
  DigitState state(std::size_t k) const;
  std::vector<std::uint8_t> digits(std::size_t k) const;
  std::vector<DigitState> states(std::size_t k) const;

  /// Number of available digits; empty for unbounded sources.
  std::optional<std::size_t> length() const;
  /// The exact point for rational sources.
  std::optional<Rational> exact_value() const;
  std::optional<std::uint64_t> seed() const;
  /// sum_{i<=k} a_i 3^{-i}.
  Rational truncated_value(std::size_t k) const;

 private:
  struct Impl;
  explicit DigitStream(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<Impl> impl_;
};

/// Digit `index` (1-based) of the counter-based stream for `seed`.
std::uint8_t random_digit(std::uint64_t seed, std::size_t index);

/// First k triadic digits of p/q by long division.
std::vector<std::uint8_t> digits_of_rational(const Integer& p, const Integer& q, std::size_t k);

std::vector<DigitState> classify(const DigitStream& stream, std::size_t k);

/// N_{a,k} by state: 0 -> {1,2}, 1 -> {2}, 2 -> {2}, 3 -> {1}, 4 -> {1}, 5 -> {1,2}.
const IndexSet& selection_for(DigitState state);

std::vector<IndexSet> selection_sets(const DigitStream& stream, std::size_t k);

/// Digit-driven schedule over the two Cantor maps.
Schedule digit_schedule(const DigitStream& stream);

/// Schedule rule behind digit_schedule, exposed so serializers can recover the stream.
class DigitScheduleRule final : public ScheduleRule {
 public:
  explicit DigitScheduleRule(DigitStream stream) : stream_(std::move(stream)) {}
  std::size_t num_maps() const override { return 2; }
  const IndexSet& at(std::size_t level) const override { return selection_for(stream_.state(level)); }
  std::string_view kind() const override { return "digits"; }
  const DigitStream& stream() const { return stream_; }

 private:
  DigitStream stream_;
};

/// f_a(k): levels i <= k in state 0 or 5, i.e. with two admissible maps.
std::size_t f_count(const DigitStream& stream, std::size_t k);

/// lim f_a(k)/k for rational sources, found from the eventual period of
/// (remainder, parity). Empty for other sources or when the period exceeds
/// `max_steps`.
std::optional<Rational> limit_branching_frequency(const DigitStream& stream, std::size_t max_steps = 1'000'000);

/// (f/k) ln2/ln3: the root of 2^{f/k} 3^{-t} = 1.
double closed_form_dimension(std::size_t f, std::size_t k);

/// K_k, built by deleting open middle thirds.
IntervalSet middle_third_level(std::size_t k);

/// K_k intersected with K_k + a. Uses the exact point for rational sources.
/// Other sources use the truncation a^(n) at the first n > k with a_n != 0
/// (looking at most 64 digits ahead), falling back to a^(k). a^(k) lies on the
/// 3^-k grid and would add touching points absent from psi_a^k([0,1]).
IntervalSet intersection_oracle(const DigitStream& stream, std::size_t k);

struct SandwichCheck {
  bool oracle_inside_iterate = false;  // S_{a,k} within psi_a^k([0,1])
  bool iterate_inside_body = false;    // psi_a^k([0,1]) within [S_{a,k}]_{3^-k}
  bool holds() const { return oracle_inside_iterate && iterate_inside_body; }
};

SandwichCheck check_sandwich(const DigitStream& stream, std::size_t k, Execution execution = Execution::parallel);

inline constexpr std::size_t num_states = 6;

struct MarkovEstimate {
  std::array<std::array<std::uint64_t, num_states>, num_states> counts{};
  // Row-normalized counts; rows never left stay zero.
  std::array<std::array<double, num_states>, num_states> transition{};
  std::array<double, num_states> frequency{};
  std::size_t length = 0;
};

/// Empirical transitions among the states of a_1 .. a_k.
MarkovEstimate markov_empirical(const DigitStream& stream, std::size_t k);

/// The displayed chain: from classes with even next parity (states 0, 2, 4)
/// to {0,1,2} and from the others to {3,4,5}, each with probability 1/3.
std::array<std::array<double, num_states>, num_states> reference_transition_matrix();

struct MonteCarloConfig {
  std::size_t samples = 200;
  std::size_t depth = 100'000;
  std::uint64_t seed = 0;
  Execution execution = Execution::parallel;
};

struct SampleRow {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::size_t depth = 0;
  std::size_t f = 0;
  double f_over_k = 0.0;
  double s_hat = 0.0;
};

struct SummaryStats {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for one sample
  double min = 0.0;
  double max = 0.0;
};

struct MonteCarloSummary {
  MonteCarloConfig config;
  std::vector<SampleRow> rows;
  SummaryStats f_over_k;
  SummaryStats s_hat;
};

using StreamFactory = std::function<DigitStream(std::uint64_t sample_seed)>;

/// Sample i draws a fresh stream for seed + i (random digits unless `factory`
/// is given) and records f_a(k)/k and the closed-form dimension. Results do
/// not depend on the execution mode or thread count.
MonteCarloSummary monte_carlo_dimension(const MonteCarloConfig& config, const StreamFactory& factory = {});

}  // namespace ssf::cantor
