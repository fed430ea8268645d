#include "esv/model_io.hpp"

#include "json_util.hpp"

namespace esv {

using detail::json;
using detail::Node;

ModelData default_model_data() {
  return {build_default_factor_tree(), GradeTables(build_default_grade_tables())};
}

std::string dump_model_data(const ModelData& data) {
  nlohmann::ordered_json factors = nlohmann::ordered_json::array();
  for (const auto& f : data.tree.factors()) {
    nlohmann::ordered_json subs = nlohmann::ordered_json::array();
    for (const auto& s : f.sub_factors) {
      nlohmann::ordered_json entry = {{"name", s.name}, {"unit", s.unit}, {"direction", to_string(s.direction)}};
      if (const GradeTable* t = data.tables.find(s.name)) {
        entry["bounds"] = t->bounds();
        if (!t->note().empty()) entry["note"] = t->note();
      }
      subs.push_back(std::move(entry));
    }
    factors.push_back({{"name", f.name}, {"sub_factors", std::move(subs)}});
  }
  nlohmann::ordered_json root = {{"schema_version", kModelDataSchemaVersion}, {"factors", std::move(factors)}};
  return root.dump(2) + "\n";
}

ModelData parse_model_data(std::string_view text) {
  const json j = detail::parse_json_text(text, "model data");
  const Node root(j, "");
  root.only_keys({"schema_version", "factors"});
  detail::check_schema_version(root, kModelDataSchemaVersion);

  const Node factors = root.at("factors");
  if (factors.size() != kFactorCount) factors.fail("expected exactly 5 factors");

  std::array<Factor, kFactorCount> tree_factors;
  std::vector<GradeTable> tables;
  for (std::size_t f = 0; f < kFactorCount; ++f) {
    const Node fn = factors.at(f);
    fn.only_keys({"name", "sub_factors"});
    tree_factors[f].name = fn.string("name");
    const Node subs = fn.at("sub_factors");
    if (subs.size() != kSubFactorsPerFactor) subs.fail("expected exactly 4 sub-factors");
    for (std::size_t k = 0; k < kSubFactorsPerFactor; ++k) {
      const Node sn = subs.at(k);
      sn.only_keys({"name", "unit", "direction", "bounds", "note"});
      SubFactor& sf = tree_factors[f].sub_factors[k];
      sf.name = sn.string("name");
      sf.unit = sn.string("unit");
      const std::string dir = sn.string("direction");
      if (dir == "higher_is_better") sf.direction = Direction::HigherIsBetter;
      else if (dir == "lower_is_better") sf.direction = Direction::LowerIsBetter;
      else sn.at("direction").fail("expected higher_is_better or lower_is_better");

      const Node bn = sn.at("bounds");
      const std::vector<double> b = bn.numbers();
      if (b.size() != 4) bn.fail("expected 4 breakpoints");
      const std::string note = sn.has("note") ? sn.string("note") : std::string();
      try {
        tables.emplace_back(sf.name, std::array<double, 4>{b[0], b[1], b[2], b[3]},
                            sf.direction == Direction::HigherIsBetter ? Orientation::Ascending
                                                                      : Orientation::Descending,
                            note);
      } catch (const Error& e) {
        bn.fail(e.what());
      }
    }
  }
  return {FactorTree(std::move(tree_factors)), GradeTables(std::move(tables))};
}

ModelData load_model_data(const std::filesystem::path& path) {
  return parse_model_data(detail::read_file(path));
}

}  // namespace esv
