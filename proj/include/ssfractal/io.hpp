#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssfractal/cantor.hpp"
#include "ssfractal/dimension.hpp"
#include "ssfractal/ifs.hpp"
#include "ssfractal/index_tree.hpp"
#include "ssfractal/interval_set.hpp"

namespace ssf::io {

using nlohmann::json;

/// Rounds to 9 significant digits; the JSON writer then prints the short form.
double sig9(double value);
std::string format_sig9(double value);

/// Two-space indented dump with a trailing newline. Deterministic for equal
/// documents, so re-reading and re-emitting reproduces the input bytes.
std::string dump(const json& doc);

/// {"intervals": [["p/q", "r/s"], ...]}
json to_json(const IntervalSet& e);
IntervalSet interval_set_from_json(const json& doc);

struct SystemDefinition {
  SimilitudeSystem system;
  Schedule schedule;
};

/// {"maps": [{"r": "1/3", "b": "0", "sigma": 1}, ...],
///  "schedule": {"kind": "full"} | {"kind": "periodic", "sets": [[1], [1, 2]]}
///            | {"kind": "digits", "source": {"a": "1/4"} | {"digits": [0, 2]} | {"seed": 7}}}
/// A missing schedule means "full".
json to_json(const SimilitudeSystem& sys, const Schedule& sched);
SystemDefinition system_from_json(const json& doc);

cantor::DigitStream digit_source_from_json(const json& doc);
json to_json(const cantor::DigitStream& stream);

/// {"branches": [[1], [2, 1], [2, 2]]}
json to_json(const IndexTree& tree);
std::vector<Branch> branches_from_json(const json& doc);

/// {"s_hat": ..., "K": ..., "window": [a, b], "residual": ..., "method": ...}
json to_json(const DimensionEstimate& estimate);

/// sample_index,seed,k,f,f_over_k,s_hat
void write_csv(std::ostream& out, const cantor::MonteCarloSummary& summary);
json summary_to_json(const cantor::MonteCarloSummary& summary);

/// One bar row per level; x rescaled so the hull of all levels spans [0,1].
std::string render_levels_svg(const std::vector<IntervalSet>& levels);

json read_json_file(const std::string& path);

}  // namespace ssf::io
