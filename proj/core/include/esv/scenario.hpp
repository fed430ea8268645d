#pragma once

// Scenario files and the delimited numeric inputs they reference.
//
// A scenario is a JSON document (schema_version 1):
//
//   name               text
//   grade_tables       optional path to a model data file (see model_io.hpp)
//   observations       { "period": text, "values": { sub-factor: number } }
//   matrix             { "file": path } or { "rows": [[...]] }, plus optional
//                      "columns": sub-factor names; without it the 20 columns
//                      follow tree order
//   prior              optional 20 expert weights gamma (tree order)
//   factor_weights     optional explicit 5 factor weights (renormalized)
//   marine             { climate:   { cost1, cost2 },
//                        pollution: { pollutants: [{capacity, treatment_cost}],
//                                     q, depth, sea_area },
//                        landscape: { importance: [[..]], use: [[0|1..]],
//                                     unit_value },
//                        fishery:   { revenue, cost, area } }
//   urban              { sigma, p0, env_protection_cost, area, p0_ref? }
//   ledger             { tangible_costs: {label: $}, intangible_costs,
//                        benefits, area, horizon_years }
//   options            optional { membership: "crisp" | "trapezoidal",
//                        width_fraction, grade_scores: [5],
//                        reconstruction, calibration: [[theta, rho], ..],
//                        uniform_fallback, discount_rate,
//                        avoided_degradation_credit }
//
// Relative paths resolve against the scenario file's directory. Unknown
// fields anywhere are rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esv/cost_benefit.hpp"
#include "esv/forecast.hpp"
#include "esv/fuzzy.hpp"
#include "esv/model.hpp"
#include "esv/model_io.hpp"
#include "esv/valuation.hpp"

namespace esv {

inline constexpr int kScenarioSchemaVersion = 1;

struct MarineInputs {
  double cost1 = 0.0;
  double cost2 = 0.0;
  std::vector<Pollutant> pollutants;
  double q = 1.0;
  double depth = 1.0;
  double sea_area = 1.0;
  std::vector<std::vector<double>> landscape_importance;
  std::vector<std::vector<int>> landscape_use;
  double landscape_unit_value = 0.0;
  double fishery_revenue = 0.0;
  double fishery_cost = 0.0;
  double fishery_area = 1.0;

  bool operator==(const MarineInputs&) const = default;
};

struct ScenarioOptions {
  MembershipMode membership;
  GradeScores grade_scores = kDefaultGradeScores;
  std::string reconstruction{kDefaultUrbanFormula};
  Calibration calibration = Calibration::identity();
  bool uniform_fallback = false;
  CbrOptions cbr;
};

struct Scenario {
  std::string name;
  ModelData model = default_model_data();
  ObservationSet observations;
  EvaluationMatrix matrix;
  std::optional<std::vector<double>> prior;
  std::optional<std::vector<double>> factor_weights;
  MarineInputs marine;
  UrbanParams urban;  // rho is filled in by the pipeline
  ProjectLedger ledger;
  ScenarioOptions options;
  /// FNV-1a over the canonical form of the resolved inputs, as 16 hex digits.
  std::string hash;
};

/// Throws ParseError (naming the field), SchemaVersionMismatch, CrossRefError.
Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

struct DelimitedTable {
  std::optional<std::vector<std::string>> header;
  std::vector<std::vector<double>> rows;
};

/// Comma, semicolon, tab or space separated numbers; '#' starts a comment.
/// A first row containing non-numeric tokens is taken as a header.
DelimitedTable parse_delimited(std::string_view text);

EvaluationMatrix load_matrix_file(const std::filesystem::path& path, Warnings* warnings = nullptr);

/// Rows of year,value[,more columns]. `column` picks a value column by header
/// name; when empty the second column is used.
std::vector<SeriesPoint> parse_series(std::string_view text, std::string_view column = {});
std::vector<SeriesPoint> load_series_file(const std::filesystem::path& path,
                                          std::string_view column = {});

ObservationSet parse_observations(std::string_view text);

/// $ESV_DATA_DIR if set, otherwise the install-time data directory (or the
/// source-tree data directory when nothing has been installed there).
std::filesystem::path default_data_dir();

/// Resolves `p` as given, or relative to default_data_dir() when it does not
/// exist as given.
std::filesystem::path resolve_data_path(const std::filesystem::path& p);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace esv
