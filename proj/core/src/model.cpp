#include "esv/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace esv {

std::string_view to_string(Grade g) {
  switch (g) {
    case Grade::Excellent: return "Excellent";
    case Grade::Top: return "Top";
    case Grade::Middle: return "Middle";
    case Grade::Low: return "Low";
    case Grade::VeryLow: return "Very low";
  }
  return "?";
}

std::optional<Grade> grade_from_string(std::string_view s) {
  for (Grade g : kAllGrades)
    if (to_string(g) == s) return g;
  return std::nullopt;
}

std::string_view to_string(Direction d) {
  return d == Direction::HigherIsBetter ? "higher_is_better" : "lower_is_better";
}

// ---------------------------------------------------------------------------
// FactorTree

FactorTree::FactorTree(std::array<Factor, kFactorCount> factors)
    : factors_(std::move(factors)) {
  std::set<std::string> seen;
  for (const auto& f : factors_) {
    for (const auto& s : f.sub_factors) {
      if (s.name.empty())
        throw Error(ErrorCode::CrossRefError, "empty sub-factor name in factor '" + f.name + "'");
      if (!seen.insert(s.name).second)
        throw Error(ErrorCode::CrossRefError, "duplicate sub-factor name '" + s.name + "'");
    }
  }
}

const SubFactor& FactorTree::leaf(std::size_t flat) const {
  return factors_.at(flat / kSubFactorsPerFactor).sub_factors.at(flat % kSubFactorsPerFactor);
}

std::optional<LeafIndex> FactorTree::find(std::string_view name) const {
  for (std::size_t f = 0; f < kFactorCount; ++f)
    for (std::size_t j = 0; j < kSubFactorsPerFactor; ++j)
      if (factors_[f].sub_factors[j].name == name) return LeafIndex{f, j};
  return std::nullopt;
}

std::vector<std::string> FactorTree::leaf_names() const {
  std::vector<std::string> out;
  out.reserve(kLeafCount);
  for (const auto& f : factors_)
    for (const auto& s : f.sub_factors) out.push_back(s.name);
  return out;
}

// ---------------------------------------------------------------------------
// GradeTable

GradeTable::GradeTable(std::string sub_factor, std::array<double, 4> bounds,
                       Orientation orientation, std::string note)
    : sub_factor_(std::move(sub_factor)),
      bounds_(bounds),
      orientation_(orientation),
      note_(std::move(note)) {
  for (std::size_t k = 0; k < bounds_.size(); ++k) {
    if (!std::isfinite(bounds_[k]))
      throw Error(ErrorCode::InvalidGradeTable, "non-finite breakpoint in table '" + sub_factor_ + "'");
    if (k > 0 && !(bounds_[k - 1] < bounds_[k]))
      throw Error(ErrorCode::InvalidGradeTable,
                  "breakpoints not strictly increasing in table '" + sub_factor_ + "'");
  }
}

std::size_t GradeTable::numeric_slot(Grade g) const {
  const auto idx = static_cast<std::size_t>(g);
  return orientation_ == Orientation::Ascending ? 4 - idx : idx;
}

Grade GradeTable::grade_of_slot(std::size_t slot) const {
  return orientation_ == Orientation::Ascending ? static_cast<Grade>(4 - slot)
                                                : static_cast<Grade>(slot);
}

Grade GradeTable::crisp_grade(double value) const {
  // number of breakpoints <= value
  const auto slot = static_cast<std::size_t>(
      std::upper_bound(bounds_.begin(), bounds_.end(), value) - bounds_.begin());
  return grade_of_slot(slot);
}

std::pair<double, double> GradeTable::interval(Grade g) const {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t slot = numeric_slot(g);
  const double lo = slot == 0 ? -inf : bounds_[slot - 1];
  const double hi = slot == 4 ? inf : bounds_[slot];
  return {lo, hi};
}

GradeTables::GradeTables(std::vector<GradeTable> tables) : tables_(std::move(tables)) {
  std::set<std::string> seen;
  for (const auto& t : tables_)
    if (!seen.insert(t.sub_factor()).second)
      throw Error(ErrorCode::InvalidGradeTable, "duplicate grade table '" + t.sub_factor() + "'");
}

const GradeTable* GradeTables::find(std::string_view sub_factor) const {
  for (const auto& t : tables_)
    if (t.sub_factor() == sub_factor) return &t;
  return nullptr;
}

// ---------------------------------------------------------------------------
// EvaluationMatrix

EvaluationMatrix::EvaluationMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::EmptyMatrix, "matrix has no entries");
  if (data_.size() != rows_ * cols_)
    throw Error(ErrorCode::RaggedRows, "matrix data size does not match its shape");
}

std::vector<double> EvaluationMatrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<std::vector<double>> EvaluationMatrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
  return out;
}

EvaluationMatrix validate_matrix(const std::vector<std::vector<double>>& raw, Warnings* warnings) {
  if (raw.empty() || raw.front().empty()) throw Error(ErrorCode::EmptyMatrix, "matrix has no entries");
  const std::size_t cols = raw.front().size();
  std::vector<double> data;
  data.reserve(raw.size() * cols);
  for (std::size_t r = 0; r < raw.size(); ++r) {
    if (raw[r].size() != cols) {
      std::ostringstream os;
      os << "row " << r << " has " << raw[r].size() << " entries, expected " << cols;
      throw Error(ErrorCode::RaggedRows, os.str());
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = raw[r][c];
      if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "non-finite entry at (" << r << "," << c << ")";
        throw Error(ErrorCode::NonFiniteEntry, os.str());
      }
      if (v < 0.0) {
        std::ostringstream os;
        os << "NegativeEntry(" << r << "," << c << ")";
        throw Error(ErrorCode::NegativeEntry, os.str());
      }
      data.push_back(v);
    }
  }
  EvaluationMatrix m(raw.size(), cols, std::move(data));
  for (std::size_t c = 0; c < cols; ++c) {
    bool any = false;
    for (std::size_t r = 0; r < m.rows() && !any; ++r) any = m(r, c) > 0.0;
    if (!any) warn(warnings, WarningCode::AllZeroColumn, "AllZeroColumn(" + std::to_string(c) + ")");
  }
  return m;
}

// ---------------------------------------------------------------------------
// WeightVector / GradeVector

namespace {

void require_nonnegative_finite(const std::vector<double>& w) {
  if (w.empty()) throw Error(ErrorCode::InvalidArgument, "weight vector is empty");
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0)
      throw Error(ErrorCode::InvalidArgument,
                  "weight " + std::to_string(i) + " is negative or non-finite");
  }
}

}  // namespace

WeightVector WeightVector::from_normalized(std::vector<double> weights) {
  require_nonnegative_finite(weights);
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << sum << ", expected 1";
    throw Error(ErrorCode::NotNormalized, os.str());
  }
  return WeightVector(std::move(weights));
}

WeightVector WeightVector::normalize(std::vector<double> weights, Warnings* warnings) {
  require_nonnegative_finite(weights);
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(sum > 0.0)) throw Error(ErrorCode::InvalidArgument, "weights are all zero");
  if (std::abs(sum - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "weights summed to " << sum << "; renormalized to 1";
    warn(warnings, WarningCode::WeightsRenormalized, os.str());
  }
  for (double& w : weights) w /= sum;
  return WeightVector(std::move(weights));
}

WeightVector WeightVector::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "weight vector is empty");
  return WeightVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

GradeVector::GradeVector(std::array<double, kGradeCount> m) : m_(m) {
  double sum = 0.0;
  for (double v : m_) {
    if (!std::isfinite(v) || v < 0.0)
      throw Error(ErrorCode::InvalidArgument, "grade membership is negative or non-finite");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kNormTolerance)
    throw Error(ErrorCode::NotNormalized, "grade memberships do not sum to 1");
}

GradeVector GradeVector::one_hot(Grade g) {
  std::array<double, kGradeCount> m{};
  m[static_cast<std::size_t>(g)] = 1.0;
  return GradeVector(m);
}

Grade GradeVector::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < kGradeCount; ++i)
    if (m_[i] > m_[best]) best = i;
  return static_cast<Grade>(best);
}

// ---------------------------------------------------------------------------
// Defaults

FactorTree build_default_factor_tree() {
  constexpr auto up = Direction::HigherIsBetter;
  constexpr auto down = Direction::LowerIsBetter;
  return FactorTree({{
      {"City Economic Development",
       {{{"Per capita GDP", "ten thousand dollars", up},
         {"Proportion of GDP in Information Industry", "%", up},
         {"GDP share of tourism income", "%", up},
         {"Annual GDP growth rate", "%", up}}}},
      {"Population Correlation And Distribution",
       {{{"Density of population", "ten thousand people/km2", down},
         {"Natural population growth rate", "%", down},
         {"Average length of education of the population", "a", up},
         {"Proportion of ageing population", "%", down}}}},
      {"Ecosystem Resilience",
       {{{"Comprehensive utilization ratio of industrial waste", "%", up},
         {"Ratio of government environmental protection investment to GDP", "%", up},
         {"Comprehensive air pollution index", "unspecified", up},
         {"Treatment rate of urban life pollution", "%", up}}}},
      {"Urban Land Use",
       {{{"Road area per capita", "m2/person", up},
         {"Per capita green area", "m2/person", up},
         {"City per capita housing area", "m2/person", up},
         {"Per capita working area", "m2/person", up}}}},
      {"Infrastructure Construction",
       {{{"Hydropower supply coverage", "%", up},
         {"Traffic perfection degree", "%", up},
         {"Network communication coverage", "%", up},
         {"City green coverage", "%", up}}}},
  }});
}

std::vector<GradeTable> build_default_grade_tables() {
  constexpr auto asc = Orientation::Ascending;
  constexpr auto desc = Orientation::Descending;
  return {
      {"Per capita GDP", {0.6, 4, 6, 14}, asc, "Excellent band 14~20 treated as >=14"},
      {"Proportion of GDP in Information Industry", {5, 10, 25, 40}, asc,
       "Excellent band 40~60 treated as >=40"},
      {"GDP share of tourism income", {1, 5, 10, 18}, asc,
       "published Top 10~18 overlaps Excellent 15~20; breakpoint set to the Top band's upper bound 18"},
      {"Annual GDP growth rate", {2, 6, 8, 10}, asc, "Excellent band 10~15 treated as >=10"},
      {"Density of population", {1, 2, 3, 4}, desc, ""},
      {"Natural population growth rate", {1.0, 2.0, 4.5, 5.0}, desc, ""},
      {"Average length of education of the population", {4, 8, 10, 13}, asc, ""},
      {"Proportion of ageing population", {4, 6, 8, 12}, desc, ""},
      {"Comprehensive utilization ratio of industrial waste", {30, 50, 70, 95}, asc, ""},
      {"Ratio of government environmental protection investment to GDP", {0.85, 1.12, 2.98, 5}, asc,
       "published row label duplicated 'Natural population growth rate'; renamed to the listed "
       "ecosystem-resilience sub-factor, bounds unchanged"},
      {"Comprehensive air pollution index", {0.5, 2, 4, 6}, asc,
       "published row label duplicated 'Average length of education of the population'; renamed, "
       "bounds unchanged; unit blank in the source table"},
      {"Treatment rate of urban life pollution", {20, 40, 60, 80}, asc,
       "published row label duplicated 'Proportion of ageing population'; renamed, bounds unchanged"},
      {"Road area per capita", {10, 15, 20, 30}, asc, ""},
      {"Per capita green area", {3, 5, 11, 18}, asc, ""},
      {"City per capita housing area", {10, 15, 20, 30}, asc, ""},
      {"Per capita working area", {6, 10, 15, 30}, asc, ""},
      {"Hydropower supply coverage", {80, 90, 95, 100}, asc, "Excellent requires full coverage (>=100)"},
      {"Traffic perfection degree", {70, 80, 90, 95}, asc, ""},
      {"Network communication coverage", {70, 90, 95, 99}, asc, ""},
      {"City green coverage", {30, 40, 50, 60}, asc, ""},
  };
}

}  // namespace esv
