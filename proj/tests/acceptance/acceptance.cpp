// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.
//
//   esv_acceptance [path-to-esv-cli]
//
// The determinism criterion needs the command-line tool; without it that
// criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>

#include "esv/cost_benefit.hpp"
#include "esv/forecast.hpp"
#include "esv/fuzzy.hpp"
#include "esv/model_io.hpp"
#include "esv/pipeline.hpp"
#include "esv/report.hpp"
#include "esv/scenario.hpp"
#include "esv/valuation.hpp"
#include "esv/weights.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace esv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path data_dir() {
  if (const char* env = std::getenv("ESV_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return ESV_TEST_DATA_DIR;
}

std::string cli_path;

// 1. Entropy chain oracle.
Outcome entropy_chain() {
  Outcome o;
  const auto t0 = Clock::now();
  oracle::Rng rng(1);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = rng.integer(2, 6), n = rng.integer(2, 6);
    std::vector<std::vector<double>> raw(m, std::vector<double>(n));
    for (auto& row : raw)
      for (double& v : row) v = rng.uniform(0.0, 10.0);
    const auto expected = oracle::entropy_weights(raw);
    const WeightVector w = entropy_report(validate_matrix(raw)).w;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(w[k] - expected[k]));
    const double total = std::accumulate(w.values().begin(), w.values().end(), 0.0);
    o.require(std::abs(total - 1.0) <= 1e-12, "weights sum to " + fmt(total));
  }
  const double secs = seconds_since(t0);
  o.require(worst <= 1e-12, "max deviation " + fmt(worst));
  o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
  if (o.pass) o.detail = "max deviation " + fmt(worst) + ", " + fmt(secs) + " s";
  return o;
}

// 2. Entropy hand cases.
Outcome entropy_hand() {
  Outcome o;
  const double half[] = {0.5, 0.5};
  const double h = system_entropy(half);
  o.require(std::abs(h - std::log(2.0)) <= 1e-12, "system entropy " + fmt(h));
  const auto s = index_entropies(column_shares(validate_matrix({{0.25}, {0.75}})));
  o.require(std::abs(s[0] - 0.811278) <= 1e-6, "index entropy " + fmt(s[0]));
  if (o.pass) o.detail = "H(0.5,0.5) = " + fmt(h) + ", s(0.25,0.75) = " + fmt(s[0]);
  return o;
}

// 3. Grade-table conformance.
Outcome grade_tables() {
  Outcome o;
  const ModelData model = load_model_data(data_dir() / "grade_tables.json");
  o.require(model.tables.size() == kLeafCount, "expected 20 tables");
  oracle::Rng rng(3);
  for (const GradeTable& t : model.tables.tables()) {
    const auto& b = t.bounds();
    const double span = b[3] - b[0];
    for (int k = 0; k < 1000; ++k) {
      const double v = rng.uniform(b[0] - span, b[3] + span);
      int hits = 0;
      for (Grade g : kAllGrades) {
        const auto [lo, hi] = t.interval(g);
        if (v >= lo && v < hi) {
          ++hits;
          o.require(g == t.crisp_grade(v), t.sub_factor() + ": interval and crisp grade disagree");
        }
      }
      o.require(hits == 1, t.sub_factor() + ": " + fmt(v) + " falls in " + std::to_string(hits) + " grades");
    }
  }
  const GradeTable* gdp = model.tables.find("Per capita GDP");
  const GradeTable* ageing = model.tables.find("Proportion of ageing population");
  o.require(gdp && gdp->crisp_grade(10.0) == Grade::Top, "per capita GDP 10 is not Top");
  o.require(ageing && ageing->crisp_grade(3.0) == Grade::Excellent, "ageing population 3% is not Excellent");
  if (o.pass) o.detail = "20 tables x 1000 samples; GDP 10 -> Top; ageing 3% -> Excellent";
  return o;
}

// 4. Fuzzy algebra.
Outcome fuzzy_algebra() {
  Outcome o;
  oracle::Rng rng(4);
  auto random_row = [&] {
    std::array<double, kGradeCount> a{};
    double s = 0.0;
    for (double& v : a) s += (v = rng.uniform(0.0, 1.0));
    for (double& v : a) v /= s;
    a[4] = std::max(0.0, 1.0 - (a[0] + a[1] + a[2] + a[3]));
    return GradeVector(a);
  };
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<GradeVector, kFactorCount> rows;
    for (auto& r : rows) r = random_row();
    std::vector<double> w(kFactorCount);
    for (double& v : w) v = rng.uniform(0.0, 1.0);
    const GradeVector theta = fuzzy_evaluate(WeightVector::normalize(w), RelationMatrix(rows));
    const double total = std::accumulate(theta.values().begin(), theta.values().end(), 0.0);
    worst = std::max(worst, std::abs(total - 1.0));
    if (trial % 100 == 0) {
      for (std::size_t f = 0; f < kFactorCount; ++f) {
        std::vector<double> unit(kFactorCount, 0.0);
        unit[f] = 1.0;
        o.require(fuzzy_evaluate(WeightVector::from_normalized(unit), RelationMatrix(rows)) == rows[f],
                  "unit weight does not select its row exactly");
      }
    }
  }
  o.require(worst <= 1e-9, "theta sum deviates by " + fmt(worst));
  if (o.pass) o.detail = "max |sum(theta) - 1| = " + fmt(worst) + "; unit weights select rows exactly";
  return o;
}

// 5. The published worked-example inputs trigger renormalization.
Outcome worked_example() {
  Outcome o;
  const std::vector<std::vector<double>> r = {{0.7723, 0.5383, 0.5443, 0.032, 0.733},
                                              {0.0024, 0.0, 0.7742, 0.042, 0.134},
                                              {0.8932, 0.2234, 0.2574, 0.045, 0.356},
                                              {0.3334, 0.1595, 0.1241, 0.024, 0.251},
                                              {0.1672, 0.4325, 0.0004, 0.234, 0.001}};
  const std::vector<double> w = {0.452, 0.675, 0.986, 0.463, 0.523};
  Warnings ws;
  const RelationMatrix rel = RelationMatrix::from_raw(r, &ws);
  o.require(has_warning(ws, WarningCode::RowsRenormalized), "no RowsRenormalized warning for R");
  Warnings wws;
  const WeightVector wn = WeightVector::normalize(w, &wws);
  o.require(has_warning(wws, WarningCode::WeightsRenormalized), "no WeightsRenormalized warning for W");
  const double theta = defuzzify(fuzzy_evaluate(wn, rel)).theta_scalar;
  if (o.pass)
    o.detail = "both warnings fire; renormalized inputs give theta " + fmt(theta) +
               " (published 0.5637 not reproducible, not asserted)";
  return o;
}

// 6. Marine formulas.
Outcome marine() {
  Outcome o;
  o.require(climate_regulation(1, 1) == 2.82, "climate(1,1) = " + fmt(climate_regulation(1, 1)));
  const Pollutant one[] = {{2, 3}};
  const double pc = pollution_control(one, 1, 1, 1);
  o.require(pc == 6.0, "pollution hand case = " + fmt(pc));
  o.require(fishery_value(1000, 200, 400) == 2.0, "fishery = " + fmt(fishery_value(1000, 200, 400)));
  oracle::Rng rng(6);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double k = rng.uniform(0.01, 100.0);
    const double c1 = rng.uniform(0, 10), c2 = rng.uniform(0, 10);
    worst = std::max(worst, oracle::relative_error(climate_regulation(k * c1, k * c2), k * climate_regulation(c1, c2)));
    const Pollutant p[] = {{rng.uniform(1, 100), rng.uniform(1, 100)}};
    const Pollutant pk[] = {{p[0].capacity, k * p[0].treatment_cost}};
    worst = std::max(worst, oracle::relative_error(pollution_control(pk, 3, 2, 5), k * pollution_control(p, 3, 2, 5)));
    const double rev = rng.uniform(500, 1000), cost = rng.uniform(0, 400);
    worst = std::max(worst, oracle::relative_error(fishery_value(k * rev, k * cost, 17), k * fishery_value(rev, cost, 17)));
  }
  o.require(worst <= 1e-12, "linearity deviation " + fmt(worst));
  if (o.pass) o.detail = "2.82, 6, 2.0 exact; linearity max relative error " + fmt(worst);
  return o;
}

// 7. City L pipeline.
Outcome city_l() {
  Outcome o;
  const auto t0 = Clock::now();
  const RunRecord r = run_pipeline(load_scenario(data_dir() / "city_l.scenario"));
  const double secs = seconds_since(t0);
  const auto& c = r.valuation.components;
  const std::array<std::pair<const char*, double>, 5> expected = {
      {{"climate_regulation", 0.02}, {"pollution_control", 0.60}, {"landscape", 0.11}, {"fishery", 0.32},
       {"urban", 0.56}}};
  for (const auto& [name, v] : expected)
    o.require(std::abs(c.at(name) - v) <= 1e-9, std::string(name) + " = " + fmt(c.at(name)));
  o.require(std::abs(r.valuation.total_unit_value - 1.61) <= 1e-9,
            "total_unit_value = " + fmt(r.valuation.total_unit_value));
  o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
  if (o.pass) o.detail = "total_unit_value " + fmt(r.valuation.total_unit_value) + " $/m2/a, " + fmt(secs) + " s";
  return o;
}

// 8. Cost-benefit monotonicity.
Outcome cbr_monotone() {
  Outcome o;
  const ProjectLedger ledger = load_scenario(data_dir() / "city_l.scenario").ledger;
  const double step = ledger.total_cost() / 50.0;
  double prev = benefit_cost_ratio(ledger, 0.0);
  for (int k = 1; k <= 50; ++k) {
    const double r = benefit_cost_ratio(ledger, step * k);
    o.require(r < prev, "ratio did not decrease at step " + std::to_string(k));
    prev = r;
  }
  if (o.pass) o.detail = "strictly decreasing over 50 points (published 0.583/0.696 not asserted)";
  return o;
}

// 9. LSTM gradient check.
Outcome gradient_check() {
  Outcome o;
  const auto t0 = Clock::now();
  oracle::Rng rng(9);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const LstmModel model = LstmModel::random(3, 500 + trial, 0.5);
    std::vector<double> window(static_cast<std::size_t>(rng.integer(2, 5)));
    for (double& v : window) v = rng.uniform(-1, 1);
    const double target = rng.uniform(-1, 1);
    std::vector<double> grad;
    window_loss(model, window, target, &grad);
    const auto numeric = oracle::central_difference(
        [&](const std::vector<double>& params) {
          LstmModel m = model;
          m.assign(params);
          return window_loss(m, window, target);
        },
        model.flatten(), 1e-5);
    for (std::size_t k = 0; k < grad.size(); ++k) {
      // both sides vanish: relative error is meaningless below FD resolution
      if (std::abs(grad[k]) < 1e-7 && std::abs(numeric[k]) < 1e-7) continue;
      worst = std::max(worst, oracle::relative_error(grad[k], numeric[k]));
    }
  }
  const double secs = seconds_since(t0);
  o.require(worst <= 1e-4, "max relative error " + fmt(worst));
  o.require(secs < 5.0, "runtime " + fmt(secs) + " s");
  if (o.pass) o.detail = "max relative error " + fmt(worst) + ", " + fmt(secs) + " s";
  return o;
}

// 10. LSTM sanity forecasts.
Outcome sanity_forecasts() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<SeriesPoint> constant, ramp;
  for (int k = 0; k < 12; ++k) {
    constant.push_back({2000 + k, 5.0});
    ramp.push_back({2000 + k, 1.0 + 0.5 * k});
  }
  const SeriesDataset cd(constant, std::make_pair(0.0, 10.0));
  const double cf = forecast(train(cd), cd, 1).at(0).value;
  o.require(std::abs(cf - 5.0) <= 0.05 * 5.0, "constant forecast " + fmt(cf));
  const SeriesDataset rd(ramp);
  const double next = 1.0 + 0.5 * 12;
  const double rf = forecast(train(rd), rd, 1).at(0).value;
  o.require(std::abs(rf - next) <= 0.10 * next, "ramp forecast " + fmt(rf) + ", expected " + fmt(next));
  const double secs = seconds_since(t0);
  o.require(secs < 30.0, "runtime " + fmt(secs) + " s");
  if (o.pass)
    o.detail = "constant 5 -> " + fmt(cf) + "; ramp next " + fmt(next) + " -> " + fmt(rf) + "; " + fmt(secs) + " s";
  return o;
}

// 11. Determinism of two CLI runs.
Outcome determinism() {
  Outcome o;
  if (cli_path.empty()) {
    o.require(false, "no esv executable given");
    return o;
  }
  const fs::path dir = fs::temp_directory_path();
  const fs::path scenario = data_dir() / "city_l.scenario";
  std::string payload[2];
  for (int k = 0; k < 2; ++k) {
    const fs::path out = dir / ("esv_acceptance_run" + std::to_string(k) + ".json");
    const std::string cmd = "\"" + cli_path + "\" run --scenario \"" + scenario.string() +
                            "\" --format structured --out \"" + out.string() + "\"";
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, "esv run exited with " + std::to_string(rc));
    if (!o.pass) return o;
    payload[k] = numeric_payload(parse_run_record(slurp(out)));
    fs::remove(out);
  }
  o.require(payload[0] == payload[1], "numeric payloads differ");
  if (o.pass) o.detail = "byte-identical payloads (" + std::to_string(payload[0].size()) + " bytes)";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];

  const std::array<std::pair<const char*, std::function<Outcome()>>, 11> criteria = {{
      {"entropy chain matches oracle", entropy_chain},
      {"entropy hand cases", entropy_hand},
      {"grade-table conformance", grade_tables},
      {"fuzzy algebra", fuzzy_algebra},
      {"worked-example renormalization warnings", worked_example},
      {"marine formulas", marine},
      {"City L pipeline total", city_l},
      {"benefit-cost monotonicity", cbr_monotone},
      {"LSTM gradient check", gradient_check},
      {"LSTM sanity forecasts", sanity_forecasts},
      {"run determinism", determinism},
  }};

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
