#pragma once

// Fuzzy comprehensive evaluation: observations are mapped to grade
// memberships through the grade tables, aggregated per factor into a 5x5
// relation matrix R, combined with factor weights (theta = W . R) and reduced
// to a scalar grade value and a monetary grade value rho.

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "esv/model.hpp"

namespace esv {

struct MembershipMode {
  enum class Kind { Crisp, Trapezoidal };

  Kind kind = Kind::Crisp;
  /// Crossfade band width as a fraction of the local interval width, in (0, 1].
  double width_fraction = 0.0;

  static MembershipMode crisp() { return {}; }
  static MembershipMode trapezoidal(double width_fraction);

  bool operator==(const MembershipMode&) const = default;
};

/// Crisp: one-hot on the containing interval. Trapezoidal: linear crossfade
/// between adjacent grades over a band centred on each breakpoint, whose
/// width is width_fraction times the narrower finite neighbouring interval.
GradeVector membership(double value, const GradeTable& table, MembershipMode mode = {});

struct ObservationSet {
  std::string period;
  std::map<std::string, double> values;

  bool operator==(const ObservationSet&) const = default;
};

/// Throws CrossRefError for names absent from the tree, InvalidArgument for
/// non-finite values.
void validate_observations(const ObservationSet& obs, const FactorTree& tree);

class RelationMatrix {
 public:
  RelationMatrix() = default;
  explicit RelationMatrix(std::array<GradeVector, kFactorCount> rows) : rows_(rows) {}

  /// Accepts an arbitrary nonnegative 5x5 array, rescaling rows that do not
  /// sum to 1 (RowsRenormalized warning). All-zero rows are rejected.
  static RelationMatrix from_raw(const std::vector<std::vector<double>>& raw,
                                 Warnings* warnings = nullptr);

  const GradeVector& row(std::size_t f) const { return rows_.at(f); }
  const std::array<GradeVector, kFactorCount>& rows() const { return rows_; }

  bool operator==(const RelationMatrix&) const = default;

 private:
  std::array<GradeVector, kFactorCount> rows_;
};

using SubFactorWeights = std::array<WeightVector, kFactorCount>;

/// Row f = sum_j sub_weights[f][j] * membership(obs of sub-factor j of f).
/// Throws MissingObservation(sub_factor).
RelationMatrix build_relation_matrix(const ObservationSet& obs, const GradeTables& tables,
                                     const FactorTree& tree, const SubFactorWeights& sub_weights,
                                     MembershipMode mode = {});

/// theta = W . R. Throws DimensionMismatch unless W has 5 entries.
GradeVector fuzzy_evaluate(const WeightVector& w, const RelationMatrix& r);

using GradeScores = std::array<double, kGradeCount>;
inline constexpr GradeScores kDefaultGradeScores = {0.9, 0.7, 0.5, 0.3, 0.1};

struct Defuzzified {
  double theta_scalar;
  Grade grade_label;
};

/// theta_scalar = theta . scores; label = argmax with ties to the better grade.
/// Scores must be strictly descending within [0, 1].
Defuzzified defuzzify(const GradeVector& theta, const GradeScores& scores = kDefaultGradeScores);

/// Monotone piecewise-linear map from grade value theta in [0, 1] to a
/// monetary value in $/m2/a.
class Calibration {
 public:
  /// Points sorted by strictly increasing theta, first theta <= 0, last >= 1,
  /// values nondecreasing. Throws InvalidCalibration otherwise.
  explicit Calibration(std::vector<std::pair<double, double>> points);

  static Calibration identity() { return Calibration({{0.0, 0.0}, {1.0, 1.0}}); }

  double operator()(double theta) const;
  const std::vector<std::pair<double, double>>& points() const { return points_; }

  bool operator==(const Calibration&) const = default;

 private:
  std::vector<std::pair<double, double>> points_;
};

double rho_from_grade(double theta_scalar, const Calibration& calibration);

struct FuzzyResult {
  GradeVector theta_vector;
  double theta_scalar = 0.0;
  Grade grade_label = Grade::Excellent;
  double rho = 0.0;

  bool operator==(const FuzzyResult&) const = default;
};

struct HierarchyWeights {
  WeightVector factor_weights;
  SubFactorWeights sub_weights;
};

/// Splits 20 leaf weights (tree order) into factor weights (sum of each
/// factor's leaves) and per-factor sub-weights (the leaves renormalized).
HierarchyWeights split_leaf_weights(const WeightVector& leaf_weights);

struct FuzzyOptions {
  MembershipMode membership;
  GradeScores scores = kDefaultGradeScores;
  Calibration calibration = Calibration::identity();
};

FuzzyResult evaluate_observations(const ObservationSet& obs, const GradeTables& tables,
                                  const FactorTree& tree, const HierarchyWeights& weights,
                                  const FuzzyOptions& options = {});

}  // namespace esv
