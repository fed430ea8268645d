#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "doctest.h"
#include "esv/model.hpp"
#include "esv/model_io.hpp"
#include "oracles.hpp"

using namespace esv;

namespace {

const GradeTable& table(const GradeTables& t, std::string_view name) {
  const GradeTable* p = t.find(name);
  REQUIRE(p != nullptr);
  return *p;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an esv::Error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("default factor tree has five factors of four sub-factors") {
  const FactorTree tree = build_default_factor_tree();
  const auto names = tree.leaf_names();
  CHECK(names.size() == kLeafCount);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == kLeafCount);
  CHECK(tree.factor(0).name == "City Economic Development");
  CHECK(tree.factor(4).name == "Infrastructure Construction");

  const auto gdp = tree.find("Per capita GDP");
  REQUIRE(gdp);
  CHECK(gdp->flat() == 0);
  CHECK(tree.leaf(0).direction == Direction::HigherIsBetter);

  const auto ageing = tree.find("Proportion of ageing population");
  REQUIRE(ageing);
  CHECK(tree.leaf(ageing->flat()).direction == Direction::LowerIsBetter);
  // the renamed resilience rows keep the published bounds and orientation
  CHECK(tree.leaf(tree.find("Comprehensive air pollution index")->flat()).direction ==
        Direction::HigherIsBetter);
  CHECK_FALSE(tree.find("no such indicator"));
}

TEST_CASE("duplicate sub-factor names are rejected") {
  auto factors = build_default_factor_tree().factors();
  factors[1].sub_factors[0].name = factors[0].sub_factors[0].name;
  CHECK(code_of([&] { FactorTree t(factors); }) == ErrorCode::CrossRefError);
}

TEST_CASE("grade table classification") {
  const GradeTables tables(build_default_grade_tables());
  CHECK(tables.size() == kLeafCount);

  SUBCASE("per capita GDP 10 is Top") {
    CHECK(table(tables, "Per capita GDP").crisp_grade(10.0) == Grade::Top);
  }
  SUBCASE("ageing population 3% is Excellent") {
    CHECK(table(tables, "Proportion of ageing population").crisp_grade(3.0) == Grade::Excellent);
  }
  SUBCASE("green area 3 is Low") {
    CHECK(table(tables, "Per capita green area").crisp_grade(3.0) == Grade::Low);
  }
  SUBCASE("breakpoints belong to the interval above") {
    const GradeTable t("x", {1, 2, 3, 4}, Orientation::Ascending);
    CHECK(t.crisp_grade(0.999) == Grade::VeryLow);
    CHECK(t.crisp_grade(1.0) == Grade::Low);
    CHECK(t.crisp_grade(2.0) == Grade::Middle);
    CHECK(t.crisp_grade(3.0) == Grade::Top);
    CHECK(t.crisp_grade(4.0) == Grade::Excellent);
    const GradeTable d("y", {1, 2, 3, 4}, Orientation::Descending);
    CHECK(d.crisp_grade(0.5) == Grade::Excellent);
    CHECK(d.crisp_grade(4.0) == Grade::VeryLow);
  }
}

TEST_CASE("grade intervals partition the real line") {
  const GradeTables tables(build_default_grade_tables());
  oracle::Rng rng(7);
  for (const GradeTable& t : tables.tables()) {
    const auto& b = t.bounds();
    const double span = b[3] - b[0];
    for (int k = 0; k < 1000; ++k) {
      const double v = rng.uniform(b[0] - span, b[3] + span);
      int hits = 0;
      Grade hit = Grade::Excellent;
      for (Grade g : kAllGrades) {
        const auto [lo, hi] = t.interval(g);
        if (v >= lo && v < hi) {
          ++hits;
          hit = g;
        }
      }
      REQUIRE(hits == 1);
      CHECK(hit == t.crisp_grade(v));
    }
    for (double v : b) {
      // breakpoints themselves are covered exactly once as well
      int hits = 0;
      for (Grade g : kAllGrades) {
        const auto [lo, hi] = t.interval(g);
        hits += (v >= lo && v < hi) ? 1 : 0;
      }
      CHECK(hits == 1);
    }
  }
}

TEST_CASE("grade tables reject malformed bounds") {
  CHECK(code_of([] { GradeTable t("x", {1, 1, 2, 3}, Orientation::Ascending); }) ==
        ErrorCode::InvalidGradeTable);
  CHECK(code_of([] {
          GradeTable t("x", {1, 2, std::numeric_limits<double>::quiet_NaN(), 3}, Orientation::Ascending);
        }) == ErrorCode::InvalidGradeTable);
}

TEST_CASE("model data file round-trips bit for bit") {
  const ModelData def = default_model_data();
  const std::string text = dump_model_data(def);
  const ModelData back = parse_model_data(text);
  CHECK(back.tree == def.tree);
  CHECK(back.tables == def.tables);
  CHECK(dump_model_data(back) == text);
}

TEST_CASE("shipped grade table file equals the built-in defaults") {
  std::ifstream in(std::filesystem::path(ESV_TEST_DATA_DIR) / "grade_tables.json", std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  const ModelData shipped = parse_model_data(ss.str());
  const ModelData def = default_model_data();
  CHECK(shipped.tree == def.tree);
  CHECK(shipped.tables == def.tables);
}

TEST_CASE("model data parse errors") {
  CHECK(code_of([] { parse_model_data("{") ; }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_model_data(R"({"schema_version": 2, "factors": []})"); }) ==
        ErrorCode::SchemaVersionMismatch);
  CHECK(code_of([] { parse_model_data(R"({"schema_version": 1, "factors": [], "extra": 1})"); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("validate_matrix") {
  Warnings ws;
  const EvaluationMatrix m = validate_matrix({{1, 0}, {2, 0}}, &ws);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(m(1, 0) == 2.0);
  CHECK(has_warning(ws, WarningCode::AllZeroColumn));

  CHECK(code_of([] { validate_matrix({}); }) == ErrorCode::EmptyMatrix);
  CHECK(code_of([] { validate_matrix({{}}); }) == ErrorCode::EmptyMatrix);
  CHECK(code_of([] { validate_matrix({{1, 2}, {3}}); }) == ErrorCode::RaggedRows);
  CHECK(code_of([] { validate_matrix({{1, 2}, {3, std::nan("")}}); }) == ErrorCode::NonFiniteEntry);
  try {
    validate_matrix({{1, 2}, {3, -1}});
    FAIL("expected NegativeEntry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeEntry);
    CHECK(std::string(e.what()).find("(1,1)") != std::string::npos);
  }
}

TEST_CASE("weight and grade vectors") {
  CHECK(code_of([] { WeightVector::from_normalized({0.5, 0.4}); }) == ErrorCode::NotNormalized);
  Warnings ws;
  const WeightVector w = WeightVector::normalize({1, 3}, &ws);
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(has_warning(ws, WarningCode::WeightsRenormalized));
  ws.clear();
  WeightVector::normalize({0.25, 0.75}, &ws);
  CHECK(ws.empty());
  CHECK(WeightVector::uniform(4)[3] == 0.25);

  CHECK(GradeVector::one_hot(Grade::Middle).argmax() == Grade::Middle);
  CHECK(GradeVector({0.4, 0.1, 0.4, 0.1, 0.0}).argmax() == Grade::Excellent);
  CHECK(code_of([] { GradeVector g({0.5, 0.1, 0.1, 0.1, 0.1}); }) == ErrorCode::NotNormalized);
}
