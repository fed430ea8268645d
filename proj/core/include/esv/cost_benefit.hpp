#pragma once

// Project ledger and benefit-cost ratios with and without the environmental
// cost of the ecosystem services the project land provides.

#include <map>
#include <optional>
#include <string>

#include "esv/valuation.hpp"

namespace esv {

struct ProjectLedger {
  std::map<std::string, double> tangible_costs;    // $
  std::map<std::string, double> intangible_costs;  // $
  std::map<std::string, double> benefits;          // $
  double area = 1.0;                               // m2
  int horizon_years = 1;

  double total_cost() const;
  double total_benefit() const;

  bool operator==(const ProjectLedger&) const = default;
};

/// Throws InvalidArgument on negative entries, ZeroArea, or horizon < 1.
void validate_ledger(const ProjectLedger& ledger);

/// total_unit_value * area summed over the horizon, each year discounted by
/// (1 + discount_rate)^-t, t = 0..horizon-1. At the default rate of 0 this is
/// total_unit_value * area * horizon_years.
double environmental_cost(const ServiceValuation& valuation, double area, int horizon_years,
                          double discount_rate = 0.0);

/// benefits / (tangible + intangible + env_cost). Throws ZeroCost.
double benefit_cost_ratio(const ProjectLedger& ledger, std::optional<double> env_cost = std::nullopt);

/// One costing configuration of a ledger.
struct CostConfiguration {
  double env_cost = 0.0;
  /// Avoided-degradation credit added to benefits.
  double benefit_credit = 0.0;

  bool operator==(const CostConfiguration&) const = default;
};

double configured_ratio(const ProjectLedger& ledger, const CostConfiguration& config);

struct RatioComparison {
  double ratio_a = 0.0;
  double ratio_b = 0.0;
  double delta = 0.0;  // ratio_b - ratio_a

  bool operator==(const RatioComparison&) const = default;
};

RatioComparison compare_configurations(const ProjectLedger& ledger, const CostConfiguration& a,
                                       const CostConfiguration& b);

struct CbrOptions {
  double discount_rate = 0.0;
  /// Off unless set; credited to benefits in the with-environmental-cost case.
  std::optional<double> avoided_degradation_credit;

  bool operator==(const CbrOptions&) const = default;
};

struct CbrReport {
  double env_cost = 0.0;
  double total_benefit = 0.0;
  double total_cost = 0.0;
  double ratio_without = 0.0;
  double ratio_with = 0.0;
  double delta = 0.0;  // ratio_with - ratio_without
  double benefit_credit = 0.0;
  /// Always "benefits/costs".
  std::string direction = "benefits/costs";

  bool operator==(const CbrReport&) const = default;
};

CbrReport compare_scenarios(const ProjectLedger& ledger, const ServiceValuation& valuation,
                            const CbrOptions& options = {});

}  // namespace esv
