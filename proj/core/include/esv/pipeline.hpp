#pragma once

// End-to-end evaluation of a scenario: entropy weights -> fuzzy grade ->
// service valuation -> benefit-cost comparison.

#include <functional>
#include <string>
#include <vector>

#include "esv/cost_benefit.hpp"
#include "esv/fuzzy.hpp"
#include "esv/scenario.hpp"
#include "esv/valuation.hpp"
#include "esv/weights.hpp"

namespace esv {

std::string toolkit_version();

struct MarineBreakdown {
  MarineUnitValues unit_values;
  std::vector<double> landscape_index;

  bool operator==(const MarineBreakdown&) const = default;
};

struct RunRecord {
  std::string scenario_name;
  std::string scenario_hash;
  std::string timestamp;  // UTC, ISO 8601
  std::string version;

  EntropyReport entropy;
  /// "entropy" when factor weights come from the entropy stage, "explicit"
  /// when the scenario supplied them.
  std::string factor_weight_source;
  WeightVector factor_weights;
  SubFactorWeights sub_weights;
  RelationMatrix relation;
  FuzzyResult fuzzy;
  MarineBreakdown marine;
  std::string urban_formula;
  UrbanParams urban;
  double urban_unit_value = 0.0;
  ServiceValuation valuation;
  CbrReport cbr;
  Warnings warnings;

  bool operator==(const RunRecord&) const = default;
};

struct RunContext {
  /// Supplies the record timestamp; defaults to the current UTC time.
  std::function<std::string()> clock;
};

std::string utc_timestamp_now();

/// Urban unit value plus the four marine services for the scenario, given
/// the grade monetary value rho.
ServiceValuation value_scenario(const Scenario& s, double rho, MarineBreakdown* marine = nullptr,
                                Warnings* warnings = nullptr);

/// Throws StageError tagged "weights", "fuzzy", "valuation" or
/// "cost-benefit" from the first failing stage.
RunRecord run_pipeline(const Scenario& s, const RunContext& ctx = {});

}  // namespace esv
