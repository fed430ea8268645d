#include "esv/valuation.hpp"

#include <cmath>
#include <sstream>

namespace esv {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
}

}  // namespace

double climate_regulation(double cost1, double cost2) {
  require_finite(cost1, "cost1");
  require_finite(cost2, "cost2");
  if (cost1 < 0.0 || cost2 < 0.0) throw Error(ErrorCode::NegativeCost, "CO2 costs must be >= 0");
  return 1.63 * cost1 + 1.19 * cost2;
}

double pollution_control(std::span<const Pollutant> pollutants, double q, double depth,
                         double sea_area) {
  require_finite(q, "Q");
  require_finite(depth, "h");
  require_finite(sea_area, "S");
  if (!(sea_area > 0.0)) throw Error(ErrorCode::ZeroArea, "sea area S must be > 0");
  if (!(q > 0.0)) throw Error(ErrorCode::ZeroQ, "normalization constant Q must be > 0");
  if (!(depth > 0.0)) throw Error(ErrorCode::InvalidArgument, "depth h must be > 0");
  double load = 0.0;
  for (const auto& p : pollutants) {
    require_finite(p.capacity, "pollutant capacity");
    require_finite(p.treatment_cost, "pollutant treatment cost");
    if (p.capacity < 0.0 || p.treatment_cost < 0.0)
      throw Error(ErrorCode::NegativeCost, "pollutant capacity and cost must be >= 0");
    load += p.capacity * p.treatment_cost;
  }
  const double dv = load / q;
  const double pv = dv * (sea_area * depth);
  return pv / sea_area;
}

LandscapeResult landscape_value(const std::vector<std::vector<double>>& importance,
                                const std::vector<std::vector<int>>& use, double unit_value) {
  require_finite(unit_value, "landscape unit value");
  if (importance.size() != use.size())
    throw Error(ErrorCode::ShapeMismatch, "importance and use matrices differ in region count");
  if (importance.empty()) throw Error(ErrorCode::ShapeMismatch, "landscape matrices are empty");
  LandscapeResult out;
  out.index.reserve(importance.size());
  double total = 0.0;
  for (std::size_t i = 0; i < importance.size(); ++i) {
    if (importance[i].size() != use[i].size())
      throw Error(ErrorCode::ShapeMismatch, "importance and use differ in row " + std::to_string(i));
    double is = 0.0;
    for (std::size_t j = 0; j < importance[i].size(); ++j) {
      if (use[i][j] != 0 && use[i][j] != 1)
        throw Error(ErrorCode::InvalidArgument, "landscape use entries must be 0 or 1");
      require_finite(importance[i][j], "landscape importance");
      is += importance[i][j] * use[i][j];
    }
    out.index.push_back(is);
    total += is;
  }
  out.value = unit_value * (total / static_cast<double>(importance.size()));
  return out;
}

double fishery_value(double revenue, double cost, double area, Warnings* warnings) {
  require_finite(revenue, "fishery revenue");
  require_finite(cost, "fishery cost");
  require_finite(area, "fishing area");
  if (!(area > 0.0)) throw Error(ErrorCode::ZeroArea, "fishing area S must be > 0");
  const double v = (revenue - cost) / area;
  if (v < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "fishery value is negative (" << v << " $/m2/a): fishing costs exceed revenue";
    warn(warnings, WarningCode::NegativeValue, os.str());
  }
  return v;
}

void validate_urban_params(const UrbanParams& p) {
  for (double v : {p.sigma, p.p0, p.env_protection_cost, p.area, p.rho, p.p0_ref})
    require_finite(v, "urban parameter");
  if (!(p.sigma > 0.0 && p.sigma < 1.0))
    throw Error(ErrorCode::InvalidArgument, "viscosity coefficient sigma must satisfy 0 < sigma < 1");
  if (p.p0 < 0.0) throw Error(ErrorCode::InvalidArgument, "productivity P0 must be >= 0");
  if (!(p.area > 0.0)) throw Error(ErrorCode::ZeroArea, "urban area must be > 0");
  if (p.env_protection_cost < 0.0)
    throw Error(ErrorCode::NegativeCost, "environmental protection cost E must be >= 0");
  if (p.rho < 0.0) throw Error(ErrorCode::InvalidArgument, "grade value rho must be >= 0");
}

double urban_uplift_formula(const UrbanParams& p) {
  const double ref = p.p0_ref > 0.0 ? p.p0_ref : p.p0;
  if (!(ref > 0.0))
    throw Error(ErrorCode::InvalidArgument, "reference productivity must be > 0 for the uplift formula");
  return p.sigma * p.rho * (p.p0 + p.env_protection_cost / p.area) / ref;
}

UrbanFormulaRegistry::UrbanFormulaRegistry() {
  add(std::string(kDefaultUrbanFormula), urban_uplift_formula);
  add("damped", [](const UrbanParams& p) { return p.sigma * p.rho; });
}

void UrbanFormulaRegistry::add(std::string name, UrbanFormula formula) {
  formulas_[std::move(name)] = std::move(formula);
}

bool UrbanFormulaRegistry::contains(std::string_view name) const {
  return formulas_.find(name) != formulas_.end();
}

std::vector<std::string> UrbanFormulaRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : formulas_) out.push_back(k);
  return out;
}

double UrbanFormulaRegistry::evaluate(std::string_view name, const UrbanParams& p) const {
  auto it = formulas_.find(name);
  if (it == formulas_.end())
    throw Error(ErrorCode::UnknownReconstruction, "unknown urban formula '" + std::string(name) + "'");
  validate_urban_params(p);
  return it->second(p);
}

double urban_unit_value(const UrbanParams& p, std::string_view formula) {
  static const UrbanFormulaRegistry registry;
  return registry.evaluate(formula, p);
}

ServiceValuation total_service_value(const MarineUnitValues& marine, double urban, double area) {
  if (!(area > 0.0)) throw Error(ErrorCode::ZeroArea, "project area must be > 0");
  ServiceValuation v;
  const double parts[] = {marine.climate_regulation, marine.pollution_control, marine.landscape,
                          marine.fishery, urban};
  for (std::size_t i = 0; i < kServiceNames.size(); ++i) {
    require_finite(parts[i], "service unit value");
    v.components[std::string(kServiceNames[i])] = parts[i];
    v.total_unit_value += parts[i];
  }
  v.area = area;
  v.total_annual_value = v.total_unit_value * area;
  return v;
}

}  // namespace esv
