#pragma once

// JSON encode/decode shared by scenario loading and report emission.

#include <map>
#include <string>
#include <vector>

#include "esv/cost_benefit.hpp"
#include "esv/fuzzy.hpp"
#include "esv/valuation.hpp"
#include "json_util.hpp"

namespace esv::detail {

inline std::map<std::string, double> decode_amounts(const Node& n) {
  n.expect_object();
  std::map<std::string, double> out;
  for (const auto& [key, _] : n.raw().items()) out[key] = n.at(key).number();
  return out;
}

inline ObservationSet decode_observations(const Node& n) {
  n.only_keys({"period", "values"});
  ObservationSet obs;
  obs.period = n.string("period");
  obs.values = decode_amounts(n.at("values"));
  return obs;
}

inline json encode_observations(const ObservationSet& obs) {
  return {{"period", obs.period}, {"values", obs.values}};
}

inline ProjectLedger decode_ledger(const Node& n) {
  n.only_keys({"tangible_costs", "intangible_costs", "benefits", "area", "horizon_years"});
  ProjectLedger l;
  l.tangible_costs = decode_amounts(n.at("tangible_costs"));
  l.intangible_costs = decode_amounts(n.at("intangible_costs"));
  l.benefits = decode_amounts(n.at("benefits"));
  l.area = n.number("area");
  const long long h = n.at("horizon_years").integer();
  if (h < 1 || h > 10000) n.at("horizon_years").fail("expected an integer in [1, 10000]");
  l.horizon_years = static_cast<int>(h);
  return l;
}

inline json encode_ledger(const ProjectLedger& l) {
  return {{"tangible_costs", l.tangible_costs},
          {"intangible_costs", l.intangible_costs},
          {"benefits", l.benefits},
          {"area", l.area},
          {"horizon_years", l.horizon_years}};
}

inline json encode_valuation(const ServiceValuation& v) {
  return {{"components", v.components},
          {"total_unit_value", v.total_unit_value},
          {"area", v.area},
          {"total_annual_value", v.total_annual_value}};
}

inline ServiceValuation decode_valuation(const Node& n) {
  n.only_keys({"components", "total_unit_value", "area", "total_annual_value"});
  ServiceValuation v;
  v.components = decode_amounts(n.at("components"));
  v.total_unit_value = n.number("total_unit_value");
  v.area = n.number("area");
  v.total_annual_value = n.number("total_annual_value");
  return v;
}

inline json encode_cbr(const CbrReport& r) {
  return {{"env_cost", r.env_cost},           {"total_benefit", r.total_benefit},
          {"total_cost", r.total_cost},       {"ratio_without", r.ratio_without},
          {"ratio_with", r.ratio_with},       {"delta", r.delta},
          {"benefit_credit", r.benefit_credit}, {"direction", r.direction}};
}

inline CbrReport decode_cbr(const Node& n) {
  n.only_keys({"env_cost", "total_benefit", "total_cost", "ratio_without", "ratio_with", "delta",
               "benefit_credit", "direction"});
  CbrReport r;
  r.env_cost = n.number("env_cost");
  r.total_benefit = n.number("total_benefit");
  r.total_cost = n.number("total_cost");
  r.ratio_without = n.number("ratio_without");
  r.ratio_with = n.number("ratio_with");
  r.delta = n.number("delta");
  r.benefit_credit = n.number("benefit_credit");
  r.direction = n.string("direction");
  return r;
}

inline json encode_grade_vector(const GradeVector& g) { return g.values(); }

inline GradeVector decode_grade_vector(const Node& n) {
  const std::vector<double> v = n.numbers();
  if (v.size() != kGradeCount) n.fail("expected 5 grade memberships");
  try {
    return GradeVector({v[0], v[1], v[2], v[3], v[4]});
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

inline json encode_fuzzy(const FuzzyResult& f) {
  return {{"theta_vector", encode_grade_vector(f.theta_vector)},
          {"theta_scalar", f.theta_scalar},
          {"grade", to_string(f.grade_label)},
          {"rho", f.rho}};
}

inline FuzzyResult decode_fuzzy(const Node& n) {
  n.only_keys({"theta_vector", "theta_scalar", "grade", "rho"});
  FuzzyResult f;
  f.theta_vector = decode_grade_vector(n.at("theta_vector"));
  f.theta_scalar = n.number("theta_scalar");
  const auto g = grade_from_string(n.string("grade"));
  if (!g) n.at("grade").fail("unknown grade label");
  f.grade_label = *g;
  f.rho = n.number("rho");
  return f;
}

inline std::vector<std::vector<double>> decode_number_rows(const Node& n) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n.size(); ++i) rows.push_back(n.at(i).numbers());
  return rows;
}

inline WeightVector decode_weights(const Node& n) {
  try {
    return WeightVector::from_normalized(n.numbers());
  } catch (const Error& e) {
    n.fail(e.what());
  }
}

}  // namespace esv::detail
