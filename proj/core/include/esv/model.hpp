#pragma once

// Domain model: the five-factor evaluation hierarchy, per-indicator grade
// tables and the validated matrix/vector types shared by every stage.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esv/error.hpp"

namespace esv {

inline constexpr std::size_t kFactorCount = 5;
inline constexpr std::size_t kSubFactorsPerFactor = 4;
inline constexpr std::size_t kLeafCount = kFactorCount * kSubFactorsPerFactor;
inline constexpr std::size_t kGradeCount = 5;

/// Ordered from best to worst.
enum class Grade { Excellent = 0, Top = 1, Middle = 2, Low = 3, VeryLow = 4 };

inline constexpr std::array<Grade, kGradeCount> kAllGrades = {
    Grade::Excellent, Grade::Top, Grade::Middle, Grade::Low, Grade::VeryLow};

std::string_view to_string(Grade g);
std::optional<Grade> grade_from_string(std::string_view s);

enum class Direction { HigherIsBetter, LowerIsBetter };

std::string_view to_string(Direction d);

struct SubFactor {
  std::string name;
  std::string unit;
  Direction direction = Direction::HigherIsBetter;

  bool operator==(const SubFactor&) const = default;
};

struct Factor {
  std::string name;
  std::array<SubFactor, kSubFactorsPerFactor> sub_factors;

  bool operator==(const Factor&) const = default;
};

struct LeafIndex {
  std::size_t factor;
  std::size_t sub_factor;

  std::size_t flat() const { return factor * kSubFactorsPerFactor + sub_factor; }
};

class FactorTree {
 public:
  /// Throws CrossRefError if sub-factor names are not unique.
  explicit FactorTree(std::array<Factor, kFactorCount> factors);

  const std::array<Factor, kFactorCount>& factors() const { return factors_; }
  const Factor& factor(std::size_t i) const { return factors_.at(i); }
  const SubFactor& leaf(std::size_t flat) const;

  std::optional<LeafIndex> find(std::string_view sub_factor_name) const;

  /// Sub-factor names in tree order (factor-major).
  std::vector<std::string> leaf_names() const;

  bool operator==(const FactorTree&) const = default;

 private:
  std::array<Factor, kFactorCount> factors_;
};

enum class Orientation {
  Ascending,   // Excellent is the high end
  Descending,  // Excellent is the low end
};

/// Four strictly increasing breakpoints b1 < b2 < b3 < b4 split the real line
/// into five half-open intervals (-inf,b1) [b1,b2) [b2,b3) [b3,b4) [b4,+inf).
/// With Ascending orientation the top interval is Excellent; with Descending
/// the bottom one is. A value on a breakpoint belongs to the interval above it.
class GradeTable {
 public:
  GradeTable(std::string sub_factor, std::array<double, 4> bounds,
             Orientation orientation, std::string note = {});

  const std::string& sub_factor() const { return sub_factor_; }
  const std::array<double, 4>& bounds() const { return bounds_; }
  Orientation orientation() const { return orientation_; }
  const std::string& note() const { return note_; }

  Grade crisp_grade(double value) const;

  /// Numeric interval [lo, hi) of a grade; infinite at the open ends.
  std::pair<double, double> interval(Grade g) const;

  /// Index of the numeric interval (0 = lowest) the grade occupies.
  std::size_t numeric_slot(Grade g) const;
  Grade grade_of_slot(std::size_t slot) const;

  bool operator==(const GradeTable&) const = default;

 private:
  std::string sub_factor_;
  std::array<double, 4> bounds_;
  Orientation orientation_;
  std::string note_;
};

class GradeTables {
 public:
  GradeTables() = default;
  explicit GradeTables(std::vector<GradeTable> tables);

  const std::vector<GradeTable>& tables() const { return tables_; }
  const GradeTable* find(std::string_view sub_factor) const;
  std::size_t size() const { return tables_.size(); }

  bool operator==(const GradeTables&) const = default;

 private:
  std::vector<GradeTable> tables_;
};

/// M x N nonnegative scores, row-major; rows are evaluated items, columns
/// indicators.
class EvaluationMatrix {
 public:
  EvaluationMatrix() = default;
  EvaluationMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const std::vector<double>& data() const { return data_; }

  std::vector<double> column(std::size_t c) const;
  std::vector<std::vector<double>> to_rows() const;

  bool operator==(const EvaluationMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Validates a raw rectangular array. All-zero columns are accepted but
/// reported through `warnings`; the weights stage rejects them.
EvaluationMatrix validate_matrix(const std::vector<std::vector<double>>& raw,
                                 Warnings* warnings = nullptr);

inline constexpr double kNormTolerance = 1e-9;

class WeightVector {
 public:
  WeightVector() = default;

  /// Requires nonnegative entries summing to 1 within 1e-9.
  static WeightVector from_normalized(std::vector<double> weights);

  /// Rescales nonnegative entries to unit sum; emits WeightsRenormalized when
  /// the input sum differs from 1 by more than 1e-9.
  static WeightVector normalize(std::vector<double> weights,
                                Warnings* warnings = nullptr);

  static WeightVector uniform(std::size_t n);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  const std::vector<double>& values() const { return w_; }
  std::span<const double> span() const { return w_; }

  bool operator==(const WeightVector&) const = default;

 private:
  explicit WeightVector(std::vector<double> w) : w_(std::move(w)) {}
  std::vector<double> w_;
};

/// Memberships over (Excellent, Top, Middle, Low, VeryLow).
class GradeVector {
 public:
  GradeVector() = default;

  /// Requires nonnegative entries summing to 1 within 1e-9.
  explicit GradeVector(std::array<double, kGradeCount> m);

  static GradeVector one_hot(Grade g);

  double operator[](std::size_t i) const { return m_[i]; }
  double operator[](Grade g) const { return m_[static_cast<std::size_t>(g)]; }
  const std::array<double, kGradeCount>& values() const { return m_; }

  /// First index wins ties, i.e. the better grade.
  Grade argmax() const;

  bool operator==(const GradeVector&) const = default;

 private:
  std::array<double, kGradeCount> m_{1.0, 0.0, 0.0, 0.0, 0.0};
};

FactorTree build_default_factor_tree();
std::vector<GradeTable> build_default_grade_tables();

}  // namespace esv
