#include "esv/pipeline.hpp"

#include <chrono>
#include <ctime>

namespace esv {

std::string toolkit_version() { return ESV_VERSION; }

std::string utc_timestamp_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

}  // namespace

ServiceValuation value_scenario(const Scenario& s, double rho, MarineBreakdown* marine,
                                Warnings* warnings) {
  const MarineInputs& m = s.marine;
  MarineBreakdown b;
  b.unit_values.climate_regulation = climate_regulation(m.cost1, m.cost2);
  b.unit_values.pollution_control = pollution_control(m.pollutants, m.q, m.depth, m.sea_area);
  LandscapeResult land = landscape_value(m.landscape_importance, m.landscape_use, m.landscape_unit_value);
  b.unit_values.landscape = land.value;
  b.landscape_index = std::move(land.index);
  b.unit_values.fishery = fishery_value(m.fishery_revenue, m.fishery_cost, m.fishery_area, warnings);

  UrbanParams urban = s.urban;
  urban.rho = rho;
  const double u = urban_unit_value(urban, s.options.reconstruction);
  if (marine != nullptr) *marine = b;
  return total_service_value(b.unit_values, u, s.ledger.area);
}

RunRecord run_pipeline(const Scenario& s, const RunContext& ctx) {
  RunRecord rec;
  rec.scenario_name = s.name;
  rec.scenario_hash = s.hash;
  rec.timestamp = ctx.clock ? ctx.clock() : utc_timestamp_now();
  rec.version = toolkit_version();

  stage("weights", [&] {
    validate_matrix(s.matrix.to_rows(), &rec.warnings);
    rec.entropy = entropy_report(s.matrix, s.prior, {s.options.uniform_fallback});
    HierarchyWeights hw = split_leaf_weights(rec.entropy.effective());
    rec.sub_weights = hw.sub_weights;
    if (s.factor_weights) {
      rec.factor_weight_source = "explicit";
      rec.factor_weights = WeightVector::normalize(*s.factor_weights, &rec.warnings);
    } else {
      rec.factor_weight_source = "entropy";
      rec.factor_weights = hw.factor_weights;
    }
    return 0;
  });

  stage("fuzzy", [&] {
    validate_observations(s.observations, s.model.tree);
    rec.relation = build_relation_matrix(s.observations, s.model.tables, s.model.tree, rec.sub_weights,
                                         s.options.membership);
    const GradeVector theta = fuzzy_evaluate(rec.factor_weights, rec.relation);
    const Defuzzified d = defuzzify(theta, s.options.grade_scores);
    rec.fuzzy = {theta, d.theta_scalar, d.grade_label, rho_from_grade(d.theta_scalar, s.options.calibration)};
    return 0;
  });

  stage("valuation", [&] {
    rec.urban_formula = s.options.reconstruction;
    rec.urban = s.urban;
    rec.urban.rho = rec.fuzzy.rho;
    rec.valuation = value_scenario(s, rec.fuzzy.rho, &rec.marine, &rec.warnings);
    rec.urban_unit_value = rec.valuation.components.at("urban");
    return 0;
  });

  stage("cost-benefit", [&] {
    rec.cbr = compare_scenarios(s.ledger, rec.valuation, s.options.cbr);
    return 0;
  });
  return rec;
}

}  // namespace esv
