#include <cmath>
#include <regex>
#include <sstream>

#include "doctest.h"
#include "ssfractal/errors.hpp"
#include "ssfractal/io.hpp"
#include "support/generators.hpp"

using namespace ssf;
using io::json;

namespace {

Rational q(const char* s) { return parse_rational(s); }

}  // namespace

TEST_CASE("interval set json") {
  const auto e = IntervalSet::normalize({{q("0"), q("1/3")}, {q("2/3"), q("1")}});
  const json doc = io::to_json(e);
  CHECK(doc == json::parse(R"({"intervals": [["0", "1/3"], ["2/3", "1"]]})"));
  CHECK(io::interval_set_from_json(doc) == e);
  CHECK(io::interval_set_from_json(json::parse(R"({"intervals": [[0, "1/2"]], "config": {}})")) ==
        IntervalSet::closed(0, q("1/2")));
  CHECK(io::interval_set_from_json(json::parse(R"({"intervals": [["4/8", "6/8"]]})")) ==
        IntervalSet::closed(q("1/2"), q("3/4")));

  CHECK_THROWS_AS(io::interval_set_from_json(json::parse(R"({"intervals": [["1", "0"]]})")), Error);
  CHECK_THROWS_AS(io::interval_set_from_json(json::parse(R"({"intervals": [["1"]]})")), Error);
  CHECK_THROWS_AS(io::interval_set_from_json(json::parse(R"({"intervals": [["a", "1"]]})")), Error);
  CHECK_THROWS_AS(io::interval_set_from_json(json::parse(R"({"nope": []})")), Error);
}

TEST_CASE("interval set round-trips byte for byte") {
  testing::Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const auto e = testing::random_interval_set(rng);
    const std::string text = io::dump(io::to_json(e));
    const auto back = io::interval_set_from_json(json::parse(text));
    CHECK(back == e);
    CHECK(io::dump(io::to_json(back)) == text);
  }
}

TEST_CASE("system json") {
  const auto def = io::system_from_json(json::parse(R"({"maps": [{"r": "1/3", "b": "0", "sigma": 1},
                                                                   {"r": "1/3", "b": "2/3", "sigma": 1}]})"));
  CHECK(def.system.size() == 2);
  CHECK(def.schedule.kind() == "full");
  CHECK(def.system.map(2).translation == q("2/3"));

  const auto flipped = io::system_from_json(json::parse(
      R"({"maps": [{"r": "1/2", "b": "1/2", "sigma": -1}], "schedule": {"kind": "periodic", "sets": [[1]]}})"));
  CHECK(flipped.system.map(1).orientation == -1);
  CHECK(flipped.system.map(1)(q("0")) == q("1/2"));
  CHECK(flipped.schedule.kind() == "periodic");

  const auto digits = io::system_from_json(json::parse(R"({"maps": [{"r": "1/3", "b": "0", "sigma": 1},
      {"r": "1/3", "b": "2/3", "sigma": 1}], "schedule": {"kind": "digits", "source": {"a": "1/4"}}})"));
  CHECK(digits.schedule.kind() == "digits");
  CHECK(digits.schedule.at(1) == IndexSet{1, 2});
  CHECK(digits.schedule.at(2) == IndexSet{2});

  CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"maps": []})")), Error);
  CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"maps": [{"r": "1", "b": "0", "sigma": 1}]})")), Error);
  CHECK_THROWS_AS(io::system_from_json(json::parse(R"({"maps": [{"r": "1/2", "b": "0", "sigma": 2}]})")), Error);
  CHECK_THROWS_AS(io::system_from_json(json::parse(
                      R"({"maps": [{"r": "1/2", "b": "0", "sigma": 1}], "schedule": {"kind": "periodic", "sets": [[2]]}})")),
                  Error);
  CHECK_THROWS_AS(io::system_from_json(json::parse(
                      R"({"maps": [{"r": "1/2", "b": "0", "sigma": 1}], "schedule": {"kind": "weird"}})")),
                  Error);
}

TEST_CASE("system json round-trips") {
  testing::Rng rng(42);
  for (int i = 0; i < 60; ++i) {
    const auto sys = testing::random_system(rng, 3);
    const auto sched = testing::random_schedule(rng, sys.size());
    const std::string text = io::dump(io::to_json(sys, sched));
    const auto def = io::system_from_json(json::parse(text));
    CHECK(io::dump(io::to_json(def.system, def.schedule)) == text);
    for (std::size_t level = 1; level <= 8; ++level) CHECK(def.schedule.at(level) == sched.at(level));
  }
  for (const auto& stream : {cantor::DigitStream::from_rational(q("3/13")), cantor::DigitStream::from_digits({0, 1, 2}),
                             cantor::DigitStream::random(9)}) {
    const auto sched = cantor::digit_schedule(stream);
    const std::string text = io::dump(io::to_json(SimilitudeSystem::cantor(), sched));
    const auto def = io::system_from_json(json::parse(text));
    CHECK(io::dump(io::to_json(def.system, def.schedule)) == text);
    for (std::size_t level = 1; level <= 3; ++level) CHECK(def.schedule.at(level) == sched.at(level));
  }
}

TEST_CASE("digit sources") {
  CHECK(io::digit_source_from_json(json("1/4")).digits(4) == std::vector<std::uint8_t>{0, 2, 0, 2});
  CHECK(io::digit_source_from_json(json::parse(R"({"digits": [2, 1]})")).length() == std::optional<std::size_t>(2));
  CHECK(io::digit_source_from_json(json::parse(R"({"seed": 5})")).digits(50) == cantor::DigitStream::random(5).digits(50));
  CHECK_THROWS_AS(io::digit_source_from_json(json::parse(R"({"a": "1/3"})")), Error);
  CHECK_THROWS_AS(io::digit_source_from_json(json::parse(R"({"digits": [3]})")), Error);
  CHECK_THROWS_AS(io::digit_source_from_json(json::parse(R"({})")), Error);
}

TEST_CASE("tree json") {
  const auto branches = io::branches_from_json(json::parse(R"({"branches": [[1], [2, 1], [2, 2]]})"));
  const auto tree = IndexTree::from_branches(branches, Schedule::full(2));
  CHECK(io::to_json(tree) == json::parse(R"({"branches": [[1], [2, 1], [2, 2]]})"));
  CHECK_THROWS_AS(io::branches_from_json(json::parse(R"({"branches": [[0]]})")), Error);
  CHECK_THROWS_AS(io::branches_from_json(json::parse(R"({"branches": 3})")), Error);
}

TEST_CASE("estimate json") {
  const auto est = estimate_dimension(SimilitudeSystem::cantor(), Schedule::full(2), 200);
  const json doc = io::to_json(est);
  CHECK(std::abs(doc.at("s_hat").get<double>() - std::log(2.0) / std::log(3.0)) < 2e-9);
  CHECK(doc.at("K") == 200);
  CHECK(doc.at("window") == json::array({100, 200}));
  CHECK(doc.at("method") == "formula");
  CHECK(doc.contains("residual"));
}

TEST_CASE("monte carlo outputs") {
  const auto summary = cantor::monte_carlo_dimension({.samples = 4, .depth = 1000, .seed = 3});
  std::ostringstream csv;
  io::write_csv(csv, summary);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "sample_index,seed,k,f,f_over_k,s_hat");
  std::size_t rows = 0;
  const std::regex row_pattern(R"(\d+,\d+,1000,\d+,[0-9.e-]+,[0-9.e-]+)");
  while (std::getline(lines, line)) {
    CHECK(std::regex_match(line, row_pattern));
    ++rows;
  }
  CHECK(rows == 4);

  const json doc = io::summary_to_json(summary);
  CHECK(doc.at("samples") == 4);
  CHECK(doc.at("seed") == 3);
  for (const char* field : {"mean", "stddev", "min", "max"}) {
    CHECK(doc.at("f_over_k").contains(field));
    CHECK(doc.at("s_hat").contains(field));
  }
  CHECK(io::format_sig9(doc.at("reference").at("intersection_dimension").get<double>()) == "0.210309918");
  CHECK(io::format_sig9(doc.at("reference").at("codimension_prediction").get<double>()) == "0.261859507");
  CHECK(doc.at("reference").at("prediction_matches") == false);
}

TEST_CASE("level svg") {
  std::vector<IntervalSet> levels;
  for (std::size_t k = 0; k <= 3; ++k) levels.push_back(cantor::middle_third_level(k));
  const std::string svg = io::render_levels_svg(levels);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("viewBox=\"0 0 1 ") != std::string::npos);
  std::size_t rects = 0;
  for (auto pos = svg.find("<rect"); pos != std::string::npos; pos = svg.find("<rect", pos + 1)) ++rects;
  CHECK(rects == 1 + 2 + 4 + 8);
  CHECK(svg.find("id=\"level-3\"") != std::string::npos);
  CHECK(svg.find("x=\"0.666666667\"") != std::string::npos);
}

TEST_CASE("sig9") {
  CHECK(io::format_sig9(1.0 / 3.0) == "0.333333333");
  CHECK(io::sig9(2.0 / 3.0) == 0.666666667);
  CHECK(io::format_sig9(0.0) == "0");
}
