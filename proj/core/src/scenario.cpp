#include "esv/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

#include "codec.hpp"

namespace esv {

using detail::json;
using detail::Node;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("ESV_DATA_DIR"); env != nullptr && *env != '\0') return env;
  // Not installed yet: fall back to the data shipped in the source tree.
  const std::filesystem::path installed = ESV_DEFAULT_DATA_DIR;
  if (!std::filesystem::exists(installed) && std::filesystem::exists(ESV_SOURCE_DATA_DIR))
    return ESV_SOURCE_DATA_DIR;
  return installed;
}

std::filesystem::path resolve_data_path(const std::filesystem::path& p) {
  if (std::filesystem::exists(p) || p.is_absolute()) return p;
  const auto candidate = default_data_dir() / p;
  return std::filesystem::exists(candidate) ? candidate : p;
}

// ---------------------------------------------------------------------------
// Delimited text

namespace {

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(cur);
    cur.clear();
  };
  for (char ch : line) {
    if (ch == ',' || ch == ';' || ch == '\t' || ch == ' ' || ch == '\r') flush();
    else cur.push_back(ch);
  }
  flush();
  return out;
}

bool parse_double(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

DelimitedTable parse_delimited(std::string_view text) {
  DelimitedTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split_tokens(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::vector<double> row;
    bool numeric = true;
    for (const auto& t : tokens) {
      double v = 0.0;
      if (!parse_double(t, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (table.rows.empty() && !table.header) {
        table.header = tokens;
        continue;
      }
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": non-numeric entry");
    }
    table.rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  return table;
}

EvaluationMatrix load_matrix_file(const std::filesystem::path& path, Warnings* warnings) {
  const DelimitedTable t = parse_delimited(detail::read_file(path));
  return validate_matrix(t.rows, warnings);
}

std::vector<SeriesPoint> parse_series(std::string_view text, std::string_view column) {
  const DelimitedTable t = parse_delimited(text);
  std::size_t col = 1;
  if (!column.empty()) {
    if (!t.header)
      throw Error(ErrorCode::ParseError, "series has no header; cannot select column '" +
                                             std::string(column) + "'");
    bool found = false;
    for (std::size_t i = 1; i < t.header->size() && !found; ++i) {
      if ((*t.header)[i] == column) {
        col = i;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::ParseError, "series has no column '" + std::string(column) + "'");
  }
  std::vector<SeriesPoint> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    if (row.size() <= col)
      throw Error(ErrorCode::ParseError, "series row " + std::to_string(r) + " has too few columns");
    const double y = row[0];
    if (y != static_cast<double>(static_cast<int>(y)))
      throw Error(ErrorCode::ParseError, "series row " + std::to_string(r) + ": year is not an integer");
    out.push_back({static_cast<int>(y), row[col]});
  }
  return out;
}

std::vector<SeriesPoint> load_series_file(const std::filesystem::path& path, std::string_view column) {
  return parse_series(detail::read_file(path), column);
}

ObservationSet parse_observations(std::string_view text) {
  const json j = detail::parse_json_text(text, "observations");
  return detail::decode_observations(Node(j, ""));
}

// ---------------------------------------------------------------------------
// Scenario

namespace {

std::filesystem::path resolve_relative(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  if (path.is_absolute() || base.empty()) return resolve_data_path(path);
  const auto local = base / path;
  return std::filesystem::exists(local) ? local : resolve_data_path(path);
}

EvaluationMatrix decode_matrix(const Node& n, const FactorTree& tree,
                               const std::filesystem::path& base) {
  n.only_keys({"file", "rows", "columns"});
  DelimitedTable t;
  if (n.has("file") == n.has("rows")) n.fail("expected exactly one of 'file' or 'rows'");
  if (n.has("file")) {
    const auto path = resolve_relative(base, n.string("file"));
    try {
      t = parse_delimited(detail::read_file(path));
    } catch (const Error& e) {
      n.at("file").fail(e.what());
    }
  } else {
    t.rows = detail::decode_number_rows(n.at("rows"));
  }

  std::optional<std::vector<std::string>> columns = t.header;
  if (n.has("columns")) {
    std::vector<std::string> names;
    const Node cn = n.at("columns");
    for (std::size_t i = 0; i < cn.size(); ++i) names.push_back(cn.at(i).string());
    columns = std::move(names);
  }

  EvaluationMatrix m;
  try {
    m = validate_matrix(t.rows);
  } catch (const Error& e) {
    throw Error(e.code(), "field '" + n.path() + "': " + e.what());
  }
  if (m.cols() != kLeafCount)
    n.fail("expected 20 indicator columns, got " + std::to_string(m.cols()));
  if (!columns) return m;

  if (columns->size() != kLeafCount) n.fail("expected 20 column names");
  // reorder to tree order
  std::vector<std::size_t> source(kLeafCount, kLeafCount);
  for (std::size_t c = 0; c < columns->size(); ++c) {
    const auto idx = tree.find((*columns)[c]);
    if (!idx)
      throw Error(ErrorCode::CrossRefError, "field '" + n.path() + ".columns': unknown sub-factor '" +
                                                (*columns)[c] + "'");
    if (source[idx->flat()] != kLeafCount)
      throw Error(ErrorCode::CrossRefError,
                  "field '" + n.path() + ".columns': duplicate column '" + (*columns)[c] + "'");
    source[idx->flat()] = c;
  }
  std::vector<double> data(m.rows() * kLeafCount);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t leaf = 0; leaf < kLeafCount; ++leaf) data[r * kLeafCount + leaf] = m(r, source[leaf]);
  return EvaluationMatrix(m.rows(), kLeafCount, std::move(data));
}

MarineInputs decode_marine(const Node& n) {
  n.only_keys({"climate", "pollution", "landscape", "fishery"});
  MarineInputs m;
  const Node c = n.at("climate");
  c.only_keys({"cost1", "cost2"});
  m.cost1 = c.number("cost1");
  m.cost2 = c.number("cost2");

  const Node p = n.at("pollution");
  p.only_keys({"pollutants", "q", "depth", "sea_area"});
  const Node list = p.at("pollutants");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const Node e = list.at(i);
    e.only_keys({"capacity", "treatment_cost"});
    m.pollutants.push_back({e.number("capacity"), e.number("treatment_cost")});
  }
  m.q = p.number("q");
  m.depth = p.number("depth");
  m.sea_area = p.number("sea_area");

  const Node l = n.at("landscape");
  l.only_keys({"importance", "use", "unit_value"});
  m.landscape_importance = detail::decode_number_rows(l.at("importance"));
  const Node use = l.at("use");
  for (std::size_t i = 0; i < use.size(); ++i) {
    std::vector<int> row;
    const Node r = use.at(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      const long long v = r.at(j).integer();
      if (v != 0 && v != 1) r.at(j).fail("expected 0 or 1");
      row.push_back(static_cast<int>(v));
    }
    m.landscape_use.push_back(std::move(row));
  }
  m.landscape_unit_value = l.number("unit_value");

  const Node f = n.at("fishery");
  f.only_keys({"revenue", "cost", "area"});
  m.fishery_revenue = f.number("revenue");
  m.fishery_cost = f.number("cost");
  m.fishery_area = f.number("area");
  return m;
}

UrbanParams decode_urban(const Node& n) {
  n.only_keys({"sigma", "p0", "env_protection_cost", "area", "p0_ref"});
  UrbanParams u;
  u.sigma = n.number("sigma");
  u.p0 = n.number("p0");
  u.env_protection_cost = n.number("env_protection_cost");
  u.area = n.number("area");
  u.p0_ref = n.has("p0_ref") ? n.number("p0_ref") : 0.0;
  u.rho = 0.0;
  try {
    validate_urban_params(u);
  } catch (const Error& e) {
    n.fail(e.what());
  }
  return u;
}

ScenarioOptions decode_options(const Node& n) {
  n.only_keys({"membership", "width_fraction", "grade_scores", "reconstruction", "calibration",
               "uniform_fallback", "discount_rate", "avoided_degradation_credit"});
  ScenarioOptions o;
  if (n.has("membership")) {
    const std::string kind = n.string("membership");
    if (kind == "crisp") {
      if (n.has("width_fraction")) n.at("width_fraction").fail("only valid with trapezoidal membership");
    } else if (kind == "trapezoidal") {
      const double wf = n.has("width_fraction") ? n.number("width_fraction") : 0.2;
      try {
        o.membership = MembershipMode::trapezoidal(wf);
      } catch (const Error& e) {
        n.at("width_fraction").fail(e.what());
      }
    } else {
      n.at("membership").fail("expected 'crisp' or 'trapezoidal'");
    }
  }
  if (n.has("grade_scores")) {
    const Node gs = n.at("grade_scores");
    const auto v = gs.numbers();
    if (v.size() != kGradeCount) gs.fail("expected 5 grade scores");
    for (std::size_t g = 0; g < kGradeCount; ++g) {
      if (!(v[g] >= 0.0 && v[g] <= 1.0) || (g > 0 && !(v[g] < v[g - 1])))
        gs.fail("grade scores must be strictly descending within [0, 1]");
      o.grade_scores[g] = v[g];
    }
  }
  if (n.has("reconstruction")) {
    o.reconstruction = n.string("reconstruction");
    if (!UrbanFormulaRegistry().contains(o.reconstruction))
      n.at("reconstruction").fail("unknown urban formula '" + o.reconstruction + "'");
  }
  if (n.has("calibration")) {
    const Node cn = n.at("calibration");
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < cn.size(); ++i) {
      const auto pair = cn.at(i).numbers();
      if (pair.size() != 2) cn.at(i).fail("expected [theta, rho]");
      pts.emplace_back(pair[0], pair[1]);
    }
    try {
      o.calibration = Calibration(std::move(pts));
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidCalibration, "field '" + cn.path() + "': " + e.what());
    }
  }
  if (n.has("uniform_fallback")) o.uniform_fallback = n.at("uniform_fallback").boolean();
  if (n.has("discount_rate")) o.cbr.discount_rate = n.number("discount_rate");
  if (n.has("avoided_degradation_credit")) {
    const double credit = n.number("avoided_degradation_credit");
    if (credit < 0.0) n.at("avoided_degradation_credit").fail("expected a value >= 0");
    o.cbr.avoided_degradation_credit = credit;
  }
  return o;
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
  const json j = detail::parse_json_text(text, "scenario");
  const Node root(j, "");
  root.only_keys({"schema_version", "name", "grade_tables", "observations", "matrix", "prior",
                  "factor_weights", "marine", "urban", "ledger", "options"});
  detail::check_schema_version(root, kScenarioSchemaVersion);

  Scenario s;
  s.name = root.string("name");
  if (root.has("grade_tables")) {
    const auto path = resolve_relative(base_dir, root.string("grade_tables"));
    try {
      s.model = load_model_data(path);
    } catch (const Error& e) {
      throw Error(e.code(), "field 'grade_tables': " + std::string(e.what()));
    }
  }
  const FactorTree& tree = s.model.tree;

  s.observations = detail::decode_observations(root.at("observations"));
  for (const auto& [name, _] : s.observations.values)
    if (!tree.find(name))
      throw Error(ErrorCode::CrossRefError, "field 'observations.values': unknown sub-factor '" + name + "'");
  for (const auto& leaf : tree.leaf_names())
    if (!s.observations.values.contains(leaf))
      throw Error(ErrorCode::ParseError, "field 'observations.values." + leaf + "': missing required field");

  s.matrix = decode_matrix(root.at("matrix"), tree, base_dir);

  if (root.has("prior")) {
    const Node pn = root.at("prior");
    auto prior = pn.numbers();
    if (prior.size() != kLeafCount) pn.fail("expected 20 prior weights");
    for (double g : prior)
      if (g < 0.0) pn.fail("prior weights must be >= 0");
    s.prior = std::move(prior);
  }
  if (root.has("factor_weights")) {
    const Node wn = root.at("factor_weights");
    auto w = wn.numbers();
    if (w.size() != kFactorCount) wn.fail("expected 5 factor weights");
    for (double v : w)
      if (v < 0.0) wn.fail("factor weights must be >= 0");
    s.factor_weights = std::move(w);
  }

  s.marine = decode_marine(root.at("marine"));
  s.urban = decode_urban(root.at("urban"));
  s.ledger = detail::decode_ledger(root.at("ledger"));
  if (root.has("options")) s.options = decode_options(root.at("options"));

  // canonical form: re-serialized document with the matrix and grade data resolved
  json canonical = j;
  canonical["matrix"] = {{"rows", s.matrix.to_rows()}};
  canonical["grade_tables"] = json::parse(dump_model_data(s.model));
  s.hash = fnv1a_hex(canonical.dump());
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  const auto resolved = resolve_data_path(path);
  return parse_scenario(detail::read_file(resolved), resolved.parent_path());
}

}  // namespace esv
