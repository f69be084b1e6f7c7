#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "extval/characterization.hpp"
#include "extval/info_measures.hpp"
#include "extval/tables.hpp"

namespace extval {

// Keys keep insertion order so reports are stable.
using Json = nlohmann::ordered_json;

// 12 significant digits, '.' separator, independent of the global locale.
std::string format_number(double v);

// Rounds to the value format_number prints, so JSON output is stable too.
double round_for_output(double v);

// CSV with header `class,cluster`; values are arbitrary strings. Throws
// Error(Parse) naming the offending 1-based line.
Labeling read_labels_csv(std::istream& in);

Json to_json(const ContingencyTable& table);
Json to_json(const QScores& scores);
Json to_json(const MeasureVector& measures);
Json to_json(const JointDistribution& p);
Json to_json(const ModelParams& params);
Json to_json(const GridSpec& spec);
Json to_json(const ViolationReport& report, const GridResult& grid);

// Accepts numbers or rational strings such as "1/15" for the eps lists.
// Missing keys keep their defaults; unknown keys are rejected.
GridSpec grid_spec_from_json(const Json& j);

void write_grid_csv(std::ostream& out, const GridResult& grid);
void write_ranks_csv(std::ostream& out, const RankTable& ranks);
void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& sweep);

// Plain-text table of violation counts per measure, one row per criterion.
void write_violation_summary(std::ostream& out, const ViolationReport& report);

} // namespace extval
