#pragma once

// Per-service monetary valuation in $/m2/a: four marine and coastal services
// plus the urban unit value, and their combination over a project area.

#include <array>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "esv/error.hpp"

namespace esv {

/// Climate regulation: 1.63 * cost1 + 1.19 * cost2, where cost1 is the cost of
/// fixing CO2 and cost2 the cost of releasing it. Throws NegativeCost.
double climate_regulation(double cost1, double cost2);

struct Pollutant {
  double capacity;        // X_i, ton/a
  double treatment_cost;  // C_i, $/ton

  bool operator==(const Pollutant&) const = default;
};

/// Pollution treatment and control per unit sea area, evaluated as the chain
///   dv   = sum X_i C_i / Q
///   P_v  = dv * (S h)
///   P_ev = P_v / S
/// so the sea area cancels and P_ev = h * sum X_i C_i / Q. Throws ZeroArea,
/// ZeroQ.
double pollution_control(std::span<const Pollutant> pollutants, double q, double depth,
                         double sea_area);

struct LandscapeResult {
  std::vector<double> index;  // IS_i per region
  double value = 0.0;         // $/m2/a
};

/// IS_i = sum_j U_ij I_ij; value = unit_value * mean_i IS_i.
/// Throws ShapeMismatch, InvalidArgument for non-binary use entries.
LandscapeResult landscape_value(const std::vector<std::vector<double>>& importance,
                                const std::vector<std::vector<int>>& use, double unit_value);

/// (R_mf - C_mf) / S. A fishing loss is kept negative and flagged with
/// NegativeValue. Throws ZeroArea.
double fishery_value(double revenue, double cost, double area, Warnings* warnings = nullptr);

struct UrbanParams {
  double sigma = 0.5;  // viscosity coefficient, 0 < sigma < 1
  double p0 = 0.0;     // comprehensive land productivity per unit area, $/m2/a
  double env_protection_cost = 0.0;  // E, $
  double area = 1.0;                 // S_urban, m2
  double rho = 0.0;                  // grade monetary value, $/m2/a
  /// Reference productivity; defaults to p0 when unset (<= 0).
  double p0_ref = 0.0;

  bool operator==(const UrbanParams&) const = default;
};

void validate_urban_params(const UrbanParams& p);

using UrbanFormula = std::function<double(const UrbanParams&)>;

/// sigma * rho * (P0 + E / S) / P0_ref.
double urban_uplift_formula(const UrbanParams& p);

/// Named urban unit-value reconstructions. "uplift" is the default;
/// "damped" is sigma * rho with no cost uplift.
class UrbanFormulaRegistry {
 public:
  UrbanFormulaRegistry();

  void add(std::string name, UrbanFormula formula);
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;
  double evaluate(std::string_view name, const UrbanParams& p) const;

 private:
  std::map<std::string, UrbanFormula, std::less<>> formulas_;
};

inline constexpr std::string_view kDefaultUrbanFormula = "uplift";

double urban_unit_value(const UrbanParams& p, std::string_view formula = kDefaultUrbanFormula);

inline constexpr std::array<std::string_view, 5> kServiceNames = {
    "climate_regulation", "pollution_control", "landscape", "fishery", "urban"};

struct ServiceValuation {
  std::map<std::string, double> components;  // $/m2/a
  double total_unit_value = 0.0;             // $/m2/a
  double area = 0.0;                         // m2
  double total_annual_value = 0.0;           // $/a

  bool operator==(const ServiceValuation&) const = default;
};

struct MarineUnitValues {
  double climate_regulation = 0.0;
  double pollution_control = 0.0;
  double landscape = 0.0;
  double fishery = 0.0;

  bool operator==(const MarineUnitValues&) const = default;
};

/// Throws ZeroArea. Negative components (fishery losses) are summed as-is.
ServiceValuation total_service_value(const MarineUnitValues& marine, double urban, double area);

}  // namespace esv
