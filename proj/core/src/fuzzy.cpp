#include "esv/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace esv {

MembershipMode MembershipMode::trapezoidal(double width_fraction) {
  if (!(width_fraction > 0.0 && width_fraction <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "trapezoidal width fraction must lie in (0, 1]");
  return {Kind::Trapezoidal, width_fraction};
}

GradeVector membership(double value, const GradeTable& table, MembershipMode mode) {
  if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "observation is not finite");
  if (mode.kind == MembershipMode::Kind::Crisp) return GradeVector::one_hot(table.crisp_grade(value));

  const auto& b = table.bounds();
  std::array<double, kGradeCount> m{};
  for (std::size_t k = 0; k < b.size(); ++k) {
    // narrower finite neighbour of breakpoint k: slot k below, slot k+1 above
    double local = std::numeric_limits<double>::infinity();
    if (k > 0) local = std::min(local, b[k] - b[k - 1]);
    if (k + 1 < b.size()) local = std::min(local, b[k + 1] - b[k]);
    const double half = 0.5 * mode.width_fraction * local;
    if (value >= b[k] - half && value <= b[k] + half) {
      const double t = (value - (b[k] - half)) / (2.0 * half);
      m[static_cast<std::size_t>(table.grade_of_slot(k))] += 1.0 - t;
      m[static_cast<std::size_t>(table.grade_of_slot(k + 1))] += t;
      return GradeVector(m);
    }
  }
  return GradeVector::one_hot(table.crisp_grade(value));
}

void validate_observations(const ObservationSet& obs, const FactorTree& tree) {
  for (const auto& [name, value] : obs.values) {
    if (!tree.find(name)) throw Error(ErrorCode::CrossRefError, "unknown sub-factor '" + name + "'");
    if (!std::isfinite(value))
      throw Error(ErrorCode::InvalidArgument, "observation '" + name + "' is not finite");
  }
}

RelationMatrix RelationMatrix::from_raw(const std::vector<std::vector<double>>& raw,
                                        Warnings* warnings) {
  if (raw.size() != kFactorCount)
    throw Error(ErrorCode::DimensionMismatch, "relation matrix needs 5 rows");
  std::array<GradeVector, kFactorCount> rows;
  for (std::size_t f = 0; f < kFactorCount; ++f) {
    if (raw[f].size() != kGradeCount)
      throw Error(ErrorCode::DimensionMismatch, "relation matrix row needs 5 grades");
    std::array<double, kGradeCount> r{};
    double sum = 0.0;
    for (std::size_t g = 0; g < kGradeCount; ++g) {
      if (!std::isfinite(raw[f][g]) || raw[f][g] < 0.0)
        throw Error(ErrorCode::NegativeEntry, "relation matrix entry is negative or non-finite");
      r[g] = raw[f][g];
      sum += r[g];
    }
    if (!(sum > 0.0)) throw Error(ErrorCode::InvalidArgument, "relation matrix row is all zero");
    if (std::abs(sum - 1.0) > kNormTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "relation matrix row " << f << " summed to " << sum << "; renormalized to 1";
      warn(warnings, WarningCode::RowsRenormalized, os.str());
    }
    for (double& v : r) v /= sum;
    rows[f] = GradeVector(r);
  }
  return RelationMatrix(rows);
}

RelationMatrix build_relation_matrix(const ObservationSet& obs, const GradeTables& tables,
                                     const FactorTree& tree, const SubFactorWeights& sub_weights,
                                     MembershipMode mode) {
  std::array<GradeVector, kFactorCount> rows;
  for (std::size_t f = 0; f < kFactorCount; ++f) {
    const WeightVector& wf = sub_weights[f];
    if (wf.size() != kSubFactorsPerFactor)
      throw Error(ErrorCode::DimensionMismatch,
                  "factor '" + tree.factor(f).name + "' needs 4 sub-factor weights");
    std::array<double, kGradeCount> acc{};
    for (std::size_t j = 0; j < kSubFactorsPerFactor; ++j) {
      const SubFactor& sf = tree.factor(f).sub_factors[j];
      auto it = obs.values.find(sf.name);
      if (it == obs.values.end())
        throw Error(ErrorCode::MissingObservation, "MissingObservation(" + sf.name + ")");
      const GradeTable* table = tables.find(sf.name);
      if (table == nullptr)
        throw Error(ErrorCode::CrossRefError, "no grade table for '" + sf.name + "'");
      const GradeVector m = membership(it->second, *table, mode);
      for (std::size_t g = 0; g < kGradeCount; ++g) acc[g] += wf[j] * m[g];
    }
    rows[f] = GradeVector(acc);
  }
  return RelationMatrix(rows);
}

GradeVector fuzzy_evaluate(const WeightVector& w, const RelationMatrix& r) {
  if (w.size() != kFactorCount)
    throw Error(ErrorCode::DimensionMismatch,
                "factor weight vector has " + std::to_string(w.size()) + " entries, expected 5");
  std::array<double, kGradeCount> theta{};
  for (std::size_t f = 0; f < kFactorCount; ++f)
    for (std::size_t g = 0; g < kGradeCount; ++g) theta[g] += w[f] * r.row(f)[g];
  return GradeVector(theta);
}

Defuzzified defuzzify(const GradeVector& theta, const GradeScores& scores) {
  for (std::size_t g = 0; g < kGradeCount; ++g) {
    if (!(scores[g] >= 0.0 && scores[g] <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "grade scores must lie in [0, 1]");
    if (g > 0 && !(scores[g] < scores[g - 1]))
      throw Error(ErrorCode::InvalidArgument, "grade scores must be strictly descending");
  }
  double scalar = 0.0;
  for (std::size_t g = 0; g < kGradeCount; ++g) scalar += theta[g] * scores[g];
  return {std::clamp(scalar, 0.0, 1.0), theta.argmax()};
}

Calibration::Calibration(std::vector<std::pair<double, double>> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw Error(ErrorCode::InvalidCalibration, "calibration needs >= 2 points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto [t, v] = points_[i];
    if (!std::isfinite(t) || !std::isfinite(v))
      throw Error(ErrorCode::InvalidCalibration, "calibration point is not finite");
    if (i > 0 && !(t > points_[i - 1].first))
      throw Error(ErrorCode::InvalidCalibration, "calibration grades must be strictly increasing");
    if (i > 0 && v < points_[i - 1].second)
      throw Error(ErrorCode::InvalidCalibration, "calibration is not monotone");
  }
  if (points_.front().first > 0.0 || points_.back().first < 1.0)
    throw Error(ErrorCode::InvalidCalibration, "calibration must cover [0, 1]");
}

double Calibration::operator()(double theta) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), theta,
                                   [](const auto& p, double t) { return p.first < t; });
  if (it == points_.begin()) return points_.front().second;
  if (it == points_.end()) return points_.back().second;
  if (it->first == theta) return it->second;
  const auto& [t1, v1] = *it;
  const auto& [t0, v0] = *(it - 1);
  return v0 + (v1 - v0) * (theta - t0) / (t1 - t0);
}

double rho_from_grade(double theta_scalar, const Calibration& calibration) {
  if (!(theta_scalar >= 0.0 && theta_scalar <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "grade value must lie in [0, 1]");
  return calibration(theta_scalar);
}

HierarchyWeights split_leaf_weights(const WeightVector& leaf) {
  if (leaf.size() != kLeafCount)
    throw Error(ErrorCode::DimensionMismatch,
                "expected 20 leaf weights, got " + std::to_string(leaf.size()));
  std::vector<double> factor(kFactorCount, 0.0);
  SubFactorWeights subs;
  for (std::size_t f = 0; f < kFactorCount; ++f) {
    std::vector<double> local(kSubFactorsPerFactor);
    for (std::size_t j = 0; j < kSubFactorsPerFactor; ++j) {
      local[j] = leaf[f * kSubFactorsPerFactor + j];
      factor[f] += local[j];
    }
    // a factor with no weight contributes nothing, so its split is arbitrary
    subs[f] = factor[f] > 0.0 ? WeightVector::normalize(std::move(local))
                              : WeightVector::uniform(kSubFactorsPerFactor);
  }
  return {WeightVector::normalize(std::move(factor)), subs};
}

FuzzyResult evaluate_observations(const ObservationSet& obs, const GradeTables& tables,
                                  const FactorTree& tree, const HierarchyWeights& weights,
                                  const FuzzyOptions& options) {
  validate_observations(obs, tree);
  const RelationMatrix r = build_relation_matrix(obs, tables, tree, weights.sub_weights, options.membership);
  const GradeVector theta = fuzzy_evaluate(weights.factor_weights, r);
  const Defuzzified d = defuzzify(theta, options.scores);
  return {theta, d.theta_scalar, d.grade_label, rho_from_grade(d.theta_scalar, options.calibration)};
}

}  // namespace esv
