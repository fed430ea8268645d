#include "esv/cost_benefit.hpp"

#include <cmath>

namespace esv {

namespace {

double sum_entries(const std::map<std::string, double>& m) {
  double s = 0.0;
  for (const auto& [_, v] : m) s += v;
  return s;
}

void check_entries(const std::map<std::string, double>& m, const char* what) {
  for (const auto& [label, v] : m)
    if (!std::isfinite(v) || v < 0.0)
      throw Error(ErrorCode::InvalidArgument,
                  std::string(what) + " '" + label + "' must be a finite amount >= 0");
}

}  // namespace

double ProjectLedger::total_cost() const { return sum_entries(tangible_costs) + sum_entries(intangible_costs); }

double ProjectLedger::total_benefit() const { return sum_entries(benefits); }

void validate_ledger(const ProjectLedger& ledger) {
  check_entries(ledger.tangible_costs, "tangible cost");
  check_entries(ledger.intangible_costs, "intangible cost");
  check_entries(ledger.benefits, "benefit");
  if (!(ledger.area > 0.0)) throw Error(ErrorCode::ZeroArea, "ledger area must be > 0");
  if (ledger.horizon_years < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1 year");
}

double environmental_cost(const ServiceValuation& valuation, double area, int horizon_years,
                          double discount_rate) {
  if (!(area > 0.0)) throw Error(ErrorCode::ZeroArea, "area must be > 0");
  if (horizon_years < 1) throw Error(ErrorCode::InvalidArgument, "horizon must be >= 1 year");
  if (!(discount_rate > -1.0) || !std::isfinite(discount_rate))
    throw Error(ErrorCode::InvalidArgument, "discount rate must be > -1");
  const double annual = valuation.total_unit_value * area;
  if (discount_rate == 0.0) return annual * horizon_years;
  double total = 0.0;
  for (int t = 0; t < horizon_years; ++t) total += annual / std::pow(1.0 + discount_rate, t);
  return total;
}

double configured_ratio(const ProjectLedger& ledger, const CostConfiguration& config) {
  if (!std::isfinite(config.env_cost) || config.env_cost < 0.0)
    throw Error(ErrorCode::InvalidArgument, "environmental cost must be >= 0");
  if (!std::isfinite(config.benefit_credit) || config.benefit_credit < 0.0)
    throw Error(ErrorCode::InvalidArgument, "benefit credit must be >= 0");
  const double cost = ledger.total_cost() + config.env_cost;
  if (!(cost > 0.0)) throw Error(ErrorCode::ZeroCost, "total project cost is zero");
  return (ledger.total_benefit() + config.benefit_credit) / cost;
}

double benefit_cost_ratio(const ProjectLedger& ledger, std::optional<double> env_cost) {
  return configured_ratio(ledger, {env_cost.value_or(0.0), 0.0});
}

RatioComparison compare_configurations(const ProjectLedger& ledger, const CostConfiguration& a,
                                       const CostConfiguration& b) {
  RatioComparison c;
  c.ratio_a = configured_ratio(ledger, a);
  c.ratio_b = configured_ratio(ledger, b);
  c.delta = c.ratio_b - c.ratio_a;
  return c;
}

CbrReport compare_scenarios(const ProjectLedger& ledger, const ServiceValuation& valuation,
                            const CbrOptions& options) {
  validate_ledger(ledger);
  CbrReport r;
  r.env_cost = environmental_cost(valuation, ledger.area, ledger.horizon_years, options.discount_rate);
  r.benefit_credit = options.avoided_degradation_credit.value_or(0.0);
  r.total_benefit = ledger.total_benefit();
  r.total_cost = ledger.total_cost();
  const RatioComparison c =
      compare_configurations(ledger, {0.0, 0.0}, {r.env_cost, r.benefit_credit});
  r.ratio_without = c.ratio_a;
  r.ratio_with = c.ratio_b;
  r.delta = c.delta;
  return r;
}

}  // namespace esv
