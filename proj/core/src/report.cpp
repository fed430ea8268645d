#include "esv/report.hpp"

#include <cstdio>
#include <sstream>

#include "codec.hpp"

namespace esv {

using detail::json;
using detail::Node;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_nums(std::span<const double> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
  return out;
}

json encode_entropy(const EntropyReport& r) {
  json j = {{"p", r.p.to_rows()}, {"s", r.s}, {"w", r.w.values()}};
  j["combined"] = r.combined ? json(r.combined->values()) : json(nullptr);
  return j;
}

EntropyReport decode_entropy(const Node& n) {
  n.only_keys({"p", "s", "w", "combined"});
  EntropyReport r;
  r.p = validate_matrix(detail::decode_number_rows(n.at("p")));
  r.s = n.at("s").numbers();
  r.w = detail::decode_weights(n.at("w"));
  if (n.has("combined")) r.combined = detail::decode_weights(n.at("combined"));
  return r;
}

json encode_warnings(const Warnings& ws) {
  json a = json::array();
  for (const auto& w : ws) a.push_back({{"code", to_string(w.code)}, {"message", w.message}});
  return a;
}

Warnings decode_warnings(const Node& n) {
  Warnings ws;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const Node w = n.at(i);
    w.only_keys({"code", "message"});
    const std::string code = w.string("code");
    bool found = false;
    for (auto c : {WarningCode::AllZeroColumn, WarningCode::WeightsRenormalized,
                   WarningCode::RowsRenormalized, WarningCode::NegativeValue}) {
      if (to_string(c) == code) {
        ws.push_back({c, w.string("message")});
        found = true;
      }
    }
    if (!found) w.at("code").fail("unknown warning code");
  }
  return ws;
}

json encode_urban(const UrbanParams& u) {
  return {{"sigma", u.sigma}, {"p0", u.p0}, {"env_protection_cost", u.env_protection_cost},
          {"area", u.area},   {"rho", u.rho}, {"p0_ref", u.p0_ref}};
}

UrbanParams decode_urban_record(const Node& n) {
  n.only_keys({"sigma", "p0", "env_protection_cost", "area", "rho", "p0_ref"});
  return {n.number("sigma"), n.number("p0"), n.number("env_protection_cost"),
          n.number("area"),  n.number("rho"), n.number("p0_ref")};
}

json encode_record(const RunRecord& r, bool with_metadata) {
  json sub = json::array();
  for (const auto& w : r.sub_weights) sub.push_back(w.values());
  json relation = json::array();
  for (const auto& row : r.relation.rows()) relation.push_back(row.values());
  const auto& mu = r.marine.unit_values;

  json j = {
      {"schema_version", kReportSchemaVersion},
      {"kind", "run_record"},
      {"scenario", {{"name", r.scenario_name}, {"hash", r.scenario_hash}}},
      {"entropy", encode_entropy(r.entropy)},
      {"weights",
       {{"source", r.factor_weight_source}, {"factor", r.factor_weights.values()}, {"sub", sub}}},
      {"relation", relation},
      {"fuzzy", detail::encode_fuzzy(r.fuzzy)},
      {"marine",
       {{"climate_regulation", mu.climate_regulation},
        {"pollution_control", mu.pollution_control},
        {"landscape", mu.landscape},
        {"fishery", mu.fishery},
        {"landscape_index", r.marine.landscape_index}}},
      {"urban",
       {{"formula", r.urban_formula}, {"params", encode_urban(r.urban)}, {"unit_value", r.urban_unit_value}}},
      {"valuation", detail::encode_valuation(r.valuation)},
      {"cbr", detail::encode_cbr(r.cbr)},
      {"warnings", encode_warnings(r.warnings)},
  };
  if (with_metadata) {
    j["timestamp"] = r.timestamp;
    j["version"] = r.version;
  }
  return j;
}

std::string text_report(const RunRecord& r) {
  std::ostringstream os;
  os << "Ecosystem service valuation: " << r.scenario_name << "\n"
     << "  scenario hash   " << r.scenario_hash << "\n"
     << "  generated       " << r.timestamp << " (esv " << r.version << ")\n\n"
     << "Weights (" << r.factor_weight_source << ")\n"
     << "  factor weights  " << join_nums(r.factor_weights.span()) << "\n"
     << "  entropies s_k   " << join_nums(r.entropy.s) << "\n\n"
     << "Fuzzy evaluation\n"
     << "  theta vector    " << join_nums(r.fuzzy.theta_vector.values()) << "\n"
     << "  theta           " << num(r.fuzzy.theta_scalar) << "\n"
     << "  grade           " << to_string(r.fuzzy.grade_label) << "\n"
     << "  rho             " << num(r.fuzzy.rho) << " $/m2/a\n\n"
     << "Service unit values ($/m2/a)\n";
  for (auto name : kServiceNames) {
    std::string label(name);
    label.resize(20, ' ');
    os << "  " << label << num(r.valuation.components.at(std::string(name))) << "\n";
  }
  os << "  total               " << num(r.valuation.total_unit_value) << "\n"
     << "  annual value        " << num(r.valuation.total_annual_value) << " $/a over "
     << num(r.valuation.area) << " m2\n\n"
     << "Benefit-cost (" << r.cbr.direction << ")\n"
     << "  environmental cost  " << num(r.cbr.env_cost) << " $\n"
     << "  ratio without       " << num(r.cbr.ratio_without) << "\n"
     << "  ratio with          " << num(r.cbr.ratio_with) << "\n"
     << "  delta               " << num(r.cbr.delta) << "\n";
  if (!r.warnings.empty()) {
    os << "\nWarnings\n";
    for (const auto& w : r.warnings) os << "  [" << to_string(w.code) << "] " << w.message << "\n";
  }
  return os.str();
}

}  // namespace

std::string emit_report(const RunRecord& record, ReportFormat format) {
  if (format == ReportFormat::Text) return text_report(record);
  return encode_record(record, true).dump(2) + "\n";
}

std::string numeric_payload(const RunRecord& record) { return encode_record(record, false).dump(); }

RunRecord parse_run_record(std::string_view text) {
  const json j = detail::parse_json_text(text, "run record");
  const Node root(j, "");
  root.only_keys({"schema_version", "kind", "scenario", "entropy", "weights", "relation", "fuzzy",
                  "marine", "urban", "valuation", "cbr", "warnings", "timestamp", "version"});
  detail::check_schema_version(root, kReportSchemaVersion);
  if (root.string("kind") != "run_record") root.at("kind").fail("expected 'run_record'");

  RunRecord r;
  const Node sc = root.at("scenario");
  sc.only_keys({"name", "hash"});
  r.scenario_name = sc.string("name");
  r.scenario_hash = sc.string("hash");
  if (root.has("timestamp")) r.timestamp = root.string("timestamp");
  if (root.has("version")) r.version = root.string("version");

  r.entropy = decode_entropy(root.at("entropy"));
  const Node w = root.at("weights");
  w.only_keys({"source", "factor", "sub"});
  r.factor_weight_source = w.string("source");
  r.factor_weights = detail::decode_weights(w.at("factor"));
  const Node sub = w.at("sub");
  if (sub.size() != kFactorCount) sub.fail("expected 5 sub-weight vectors");
  for (std::size_t f = 0; f < kFactorCount; ++f) r.sub_weights[f] = detail::decode_weights(sub.at(f));

  const Node rel = root.at("relation");
  if (rel.size() != kFactorCount) rel.fail("expected 5 rows");
  std::array<GradeVector, kFactorCount> rows;
  for (std::size_t f = 0; f < kFactorCount; ++f) rows[f] = detail::decode_grade_vector(rel.at(f));
  r.relation = RelationMatrix(rows);

  r.fuzzy = detail::decode_fuzzy(root.at("fuzzy"));
  const Node m = root.at("marine");
  m.only_keys({"climate_regulation", "pollution_control", "landscape", "fishery", "landscape_index"});
  r.marine.unit_values = {m.number("climate_regulation"), m.number("pollution_control"),
                          m.number("landscape"), m.number("fishery")};
  r.marine.landscape_index = m.at("landscape_index").numbers();
  const Node u = root.at("urban");
  u.only_keys({"formula", "params", "unit_value"});
  r.urban_formula = u.string("formula");
  r.urban = decode_urban_record(u.at("params"));
  r.urban_unit_value = u.number("unit_value");
  r.valuation = detail::decode_valuation(root.at("valuation"));
  r.cbr = detail::decode_cbr(root.at("cbr"));
  r.warnings = decode_warnings(root.at("warnings"));
  return r;
}

std::string emit_entropy_report(const EntropyReport& r, ReportFormat format) {
  if (format == ReportFormat::Structured) return encode_entropy(r).dump(2) + "\n";
  std::ostringstream os;
  os << "index  entropy s_k            weight w_k";
  if (r.combined) os << "              combined";
  os << "\n";
  for (std::size_t k = 0; k < r.s.size(); ++k) {
    char line[128];
    std::snprintf(line, sizeof line, "%5zu  %-23s  %-23s", k, num(r.s[k]).c_str(), num(r.w[k]).c_str());
    os << line;
    if (r.combined) os << "  " << num((*r.combined)[k]);
    os << "\n";
  }
  return os.str();
}

std::string emit_fuzzy_result(const FuzzyResult& f, ReportFormat format) {
  if (format == ReportFormat::Structured) return detail::encode_fuzzy(f).dump(2) + "\n";
  std::ostringstream os;
  os << "theta vector  " << join_nums(f.theta_vector.values()) << "\n"
     << "theta         " << num(f.theta_scalar) << "\n"
     << "grade         " << to_string(f.grade_label) << "\n"
     << "rho           " << num(f.rho) << " $/m2/a\n";
  return os.str();
}

std::string emit_valuation(const ServiceValuation& v, ReportFormat format) {
  if (format == ReportFormat::Structured) return detail::encode_valuation(v).dump(2) + "\n";
  std::ostringstream os;
  for (const auto& [name, value] : v.components) os << name << " " << num(value) << " $/m2/a\n";
  os << "total_unit_value " << num(v.total_unit_value) << " $/m2/a\n"
     << "total_annual_value " << num(v.total_annual_value) << " $/a\n";
  return os.str();
}

std::string emit_cbr(const CbrReport& r, ReportFormat format) {
  if (format == ReportFormat::Structured) return detail::encode_cbr(r).dump(2) + "\n";
  std::ostringstream os;
  os << "direction      " << r.direction << "\n"
     << "total benefit  " << num(r.total_benefit) << " $\n"
     << "total cost     " << num(r.total_cost) << " $\n"
     << "env cost       " << num(r.env_cost) << " $\n"
     << "benefit credit " << num(r.benefit_credit) << " $\n"
     << "ratio without  " << num(r.ratio_without) << "\n"
     << "ratio with     " << num(r.ratio_with) << "\n"
     << "delta          " << num(r.delta) << "\n";
  return os.str();
}

std::string emit_forecast(const std::vector<SeriesPoint>& rows, ReportFormat format) {
  if (format == ReportFormat::Structured) {
    json a = json::array();
    for (const auto& p : rows) a.push_back({{"year", p.year}, {"value", p.value}});
    return json{{"forecast", a}}.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "year,value\n";
  for (const auto& p : rows) os << p.year << "," << num(p.value) << "\n";
  return os.str();
}

ServiceValuation parse_valuation(std::string_view text) {
  const json j = detail::parse_json_text(text, "valuation");
  if (j.is_object() && j.contains("kind")) {
    const Node root(j, "");
    return detail::decode_valuation(root.at("valuation"));
  }
  return detail::decode_valuation(Node(j, ""));
}

ProjectLedger parse_ledger(std::string_view text) {
  const json j = detail::parse_json_text(text, "ledger");
  if (j.is_object() && j.contains("schema_version") && j.contains("ledger"))
    return detail::decode_ledger(Node(j, "").at("ledger"));
  return detail::decode_ledger(Node(j, ""));
}

HierarchyWeights parse_hierarchy_weights(std::string_view text, Warnings* warnings) {
  const json j = detail::parse_json_text(text, "weights");
  const Node root(j, "");
  root.only_keys({"factor_weights", "sub_weights"});
  HierarchyWeights hw;
  const Node fw = root.at("factor_weights");
  auto w = fw.numbers();
  if (w.size() != kFactorCount) fw.fail("expected 5 factor weights");
  try {
    hw.factor_weights = WeightVector::normalize(std::move(w), warnings);
  } catch (const Error& e) {
    fw.fail(e.what());
  }
  for (std::size_t f = 0; f < kFactorCount; ++f) hw.sub_weights[f] = WeightVector::uniform(kSubFactorsPerFactor);
  if (root.has("sub_weights")) {
    const Node sw = root.at("sub_weights");
    if (sw.size() != kFactorCount) sw.fail("expected 5 sub-weight vectors");
    for (std::size_t f = 0; f < kFactorCount; ++f) {
      auto v = sw.at(f).numbers();
      if (v.size() != kSubFactorsPerFactor) sw.at(f).fail("expected 4 sub-factor weights");
      try {
        hw.sub_weights[f] = WeightVector::normalize(std::move(v), warnings);
      } catch (const Error& e) {
        sw.at(f).fail(e.what());
      }
    }
  }
  return hw;
}

}  // namespace esv
