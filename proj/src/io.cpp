#include "ssfractal/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ssfractal/errors.hpp"

namespace ssf::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::invalid_input, what); }

const json& member(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) bad(std::string("missing field '") + key + "'");
  return doc.at(key);
}

Rational rational_field(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>())));
  bad("rationals must be strings like \"p/q\" or integers");
}

json stats_to_json(const cantor::SummaryStats& s) {
  return json{{"mean", sig9(s.mean)}, {"stddev", sig9(s.stddev)}, {"min", sig9(s.min)}, {"max", sig9(s.max)}};
}

}  // namespace

double sig9(double value) {
  if (!std::isfinite(value)) return value;
  return std::stod(format_sig9(value));
}

std::string format_sig9(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json to_json(const IntervalSet& e) {
  json list = json::array();
  for (const auto& iv : e.intervals()) list.push_back(json::array({to_string(iv.lo), to_string(iv.hi)}));
  return json{{"intervals", list}};
}

IntervalSet interval_set_from_json(const json& doc) {
  const json& list = member(doc, "intervals");
  if (!list.is_array()) bad("'intervals' must be an array");
  std::vector<Interval> raw;
  for (const auto& pair : list) {
    if (!pair.is_array() || pair.size() != 2) bad("each interval must be a [lo, hi] pair");
    raw.push_back({rational_field(pair[0]), rational_field(pair[1])});
  }
  return IntervalSet::normalize(std::move(raw));
}

json to_json(const cantor::DigitStream& stream) {
  switch (stream.source()) {
    case cantor::DigitSource::rational:
      return json{{"a", to_string(*stream.exact_value())}};
    case cantor::DigitSource::explicit_digits: {
      const auto ds = stream.digits(*stream.length());
      json list = json::array();
      for (auto d : ds) list.push_back(static_cast<int>(d));
      return json{{"digits", list}};
    }
    case cantor::DigitSource::random:
      return json{{"seed", *stream.seed()}};
  }
  return json{};
}

cantor::DigitStream digit_source_from_json(const json& doc) {
  if (doc.is_string()) return cantor::DigitStream::from_rational(parse_rational(doc.get<std::string>()));
  if (doc.contains("a")) return cantor::DigitStream::from_rational(rational_field(doc.at("a")));
  if (doc.contains("digits")) {
    std::vector<std::uint8_t> ds;
    for (const auto& d : doc.at("digits")) {
      if (!d.is_number_integer() || d.get<int>() < 0 || d.get<int>() > 2) bad("digits must be 0, 1 or 2");
      ds.push_back(static_cast<std::uint8_t>(d.get<int>()));
    }
    return cantor::DigitStream::from_digits(std::move(ds));
  }
  if (doc.contains("seed")) return cantor::DigitStream::random(doc.at("seed").get<std::uint64_t>());
  bad("digit source needs one of 'a', 'digits', 'seed'");
}

json to_json(const SimilitudeSystem& sys, const Schedule& sched) {
  json maps = json::array();
  for (const auto& s : sys.maps()) {
    maps.push_back(json{{"r", to_string(s.ratio)}, {"b", to_string(s.translation)}, {"sigma", s.orientation}});
  }
  json schedule{{"kind", std::string(sched.kind())}};
  if (const auto* periodic = dynamic_cast<const PeriodicScheduleRule*>(&sched.rule())) {
    schedule["sets"] = periodic->sets();
  } else if (const auto* digits = dynamic_cast<const cantor::DigitScheduleRule*>(&sched.rule())) {
    schedule["source"] = to_json(digits->stream());
  }
  return json{{"maps", maps}, {"schedule", schedule}};
}

SystemDefinition system_from_json(const json& doc) {
  const json& maps = member(doc, "maps");
  if (!maps.is_array()) bad("'maps' must be an array");
  std::vector<Similitude> list;
  for (const auto& m : maps) {
    const int sigma = m.contains("sigma") ? m.at("sigma").get<int>() : 1;
    const Rational b = m.contains("b") ? rational_field(m.at("b")) : Rational(0);
    list.push_back(Similitude::make(rational_field(member(m, "r")), b, sigma));
  }
  SimilitudeSystem sys(std::move(list));
  if (!doc.contains("schedule")) return {sys, Schedule::full(sys.size())};
  const json& sched = doc.at("schedule");
  const std::string kind = member(sched, "kind").get<std::string>();
  if (kind == "full") return {sys, Schedule::full(sys.size())};
  if (kind == "periodic") {
    std::vector<IndexSet> sets;
    for (const auto& s : member(sched, "sets")) sets.push_back(s.get<IndexSet>());
    return {sys, Schedule::periodic(sys.size(), std::move(sets))};
  }
  if (kind == "digits") {
    if (sys.size() != 2) bad("digit-driven schedules select among exactly two maps");
    return {sys, cantor::digit_schedule(digit_source_from_json(member(sched, "source")))};
  }
  bad("unknown schedule kind '" + kind + "'");
}

json to_json(const IndexTree& tree) { return json{{"branches", tree.branches()}}; }

std::vector<Branch> branches_from_json(const json& doc) {
  const json& list = member(doc, "branches");
  if (!list.is_array()) bad("'branches' must be an array");
  std::vector<Branch> out;
  for (const auto& b : list) {
    if (!b.is_array()) bad("each branch must be an array of map indices");
    Branch branch;
    for (const auto& j : b) {
      if (!j.is_number_integer() || j.get<long long>() < 1) bad("map indices are positive integers");
      branch.push_back(j.get<std::size_t>());
    }
    out.push_back(std::move(branch));
  }
  return out;
}

json to_json(const DimensionEstimate& estimate) {
  return json{{"s_hat", sig9(estimate.s_hat)},
              {"K", estimate.horizon},
              {"window", json::array({estimate.window.first, estimate.window.second})},
              {"residual", sig9(estimate.residual)},
              {"method", to_string(estimate.method)}};
}

void write_csv(std::ostream& out, const cantor::MonteCarloSummary& summary) {
  out << "sample_index,seed,k,f,f_over_k,s_hat\n";
  for (const auto& r : summary.rows) {
    out << r.index << ',' << r.seed << ',' << r.depth << ',' << r.f << ',' << format_sig9(r.f_over_k) << ','
        << format_sig9(r.s_hat) << '\n';
  }
}

json summary_to_json(const cantor::MonteCarloSummary& summary) {
  const double target = cantor::intersection_dimension();
  const double prediction = cantor::codimension_prediction();
  return json{
      {"samples", summary.config.samples},
      {"k", summary.config.depth},
      {"seed", summary.config.seed},
      {"f_over_k", stats_to_json(summary.f_over_k)},
      {"s_hat", stats_to_json(summary.s_hat)},
      {"reference",
       {{"intersection_dimension", sig9(target)},
        {"codimension_prediction", sig9(prediction)},
        {"prediction_matches", std::abs(target - prediction) < 1e-12}}},
  };
}

std::string render_levels_svg(const std::vector<IntervalSet>& levels) {
  Rational lo, hi;
  bool first = true;
  for (const auto& level : levels) {
    if (level.empty()) continue;
    if (first || level.min() < lo) lo = level.min();
    if (first || level.max() > hi) hi = level.max();
    first = false;
  }
  const double origin = first ? 0.0 : lo.get_d();
  const double span = first || hi == lo ? 1.0 : Rational(hi - lo).get_d();
  const double row = 0.05;
  const double bar = 0.03;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 " << format_sig9(row * static_cast<double>(levels.size()))
      << "\" preserveAspectRatio=\"none\" width=\"800\" height=\"" << 40 * levels.size() << "\">\n";
  for (std::size_t i = 0; i < levels.size(); ++i) {
    svg << "  <g id=\"level-" << i << "\">\n";
    for (const auto& iv : levels[i].intervals()) {
      const double x = (iv.lo.get_d() - origin) / span;
      const double w = Rational(iv.hi - iv.lo).get_d() / span;
      svg << "    <rect x=\"" << format_sig9(x) << "\" y=\"" << format_sig9(row * static_cast<double>(i)) << "\" width=\""
          << format_sig9(w > 0 ? w : 0.001) << "\" height=\"" << format_sig9(bar) << "\"/>\n";
    }
    svg << "  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace ssf::io
