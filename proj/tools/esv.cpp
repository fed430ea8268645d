// esv: ecosystem service valuation toolkit.
//
//   esv weights  --matrix FILE [--prior FILE] [--uniform-fallback]
//   esv evaluate --observations FILE [--weights FILE] | --scenario FILE
//   esv value    --scenario FILE [--rho X]
//   esv cbr      --ledger FILE --valuation FILE | --scenario FILE
//   esv forecast --series FILE [--window N --epochs N --lr X --seed N --horizon N]
//   esv run      --scenario FILE
//   esv tables
//
// Common: --format text|structured, --out FILE. Exit codes: 0 success,
// 1 input error, 2 computation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "esv/model_io.hpp"
#include "esv/pipeline.hpp"
#include "esv/report.hpp"
#include "esv/scenario.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitCompute = 2;

struct Common {
  std::string format = "text";
  std::string out;

  esv::ReportFormat report_format() const {
    return format == "structured" ? esv::ReportFormat::Structured : esv::ReportFormat::Text;
  }
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw esv::Error(esv::ErrorCode::InvalidArgument, "cannot write '" + c.out + "'");
  f << text;
}

void print_warnings(const esv::Warnings& ws) {
  for (const auto& w : ws) std::cerr << "warning: [" << esv::to_string(w.code) << "] " << w.message << "\n";
}

std::string read_text(const std::string& path) {
  std::ifstream in(esv::resolve_data_path(path), std::ios::binary);
  if (!in) throw esv::Error(esv::ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> read_prior(const std::string& path) {
  const auto table = esv::parse_delimited(read_text(path));
  std::vector<double> out;
  for (const auto& row : table.rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ecosystem service valuation: entropy weights, fuzzy grading, valuation, "
               "benefit-cost analysis and LSTM forecasting"};
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}))
        ->capture_default_str();
    sub->add_option("--out", common.out, "Write output to FILE instead of stdout");
  };

  std::string scenario_path, matrix_path, prior_path, observations_path, weights_path, tables_path;
  std::string ledger_path, valuation_path, series_path, quantity, membership = "crisp";
  bool uniform_fallback = false;
  double width = 0.2;
  std::optional<double> rho, credit, discount, lo, hi;
  esv::TrainConfig train;
  std::size_t horizon = 1;

  auto* weights = app.add_subcommand("weights", "Entropy weights of an evaluation matrix");
  weights->add_option("--matrix", matrix_path, "Delimited numeric matrix (rows = items)");
  weights->add_option("--scenario", scenario_path, "Take the matrix and prior from a scenario");
  weights->add_option("--prior", prior_path, "Delimited expert prior weights gamma");
  weights->add_flag("--uniform-fallback", uniform_fallback,
                    "Use equal weights when every indicator has maximal entropy");
  add_common(weights);

  auto* evaluate = app.add_subcommand("evaluate", "Fuzzy grade evaluation of observations");
  evaluate->add_option("--observations", observations_path, "Observation set (JSON)");
  evaluate->add_option("--weights", weights_path, "Factor/sub-factor weights (JSON)");
  evaluate->add_option("--scenario", scenario_path, "Evaluate a scenario's observations with its weights");
  evaluate->add_option("--grade-tables", tables_path, "Model data file overriding the defaults");
  evaluate->add_option("--membership", membership, "Membership function")
      ->check(CLI::IsMember({"crisp", "trapezoidal"}));
  evaluate->add_option("--width", width, "Trapezoidal band width fraction")->capture_default_str();
  add_common(evaluate);

  auto* value = app.add_subcommand("value", "Per-service unit values of a scenario");
  value->add_option("--scenario", scenario_path, "Scenario file")->required();
  value->add_option("--rho", rho, "Override the grade monetary value rho ($/m2/a)");
  add_common(value);

  auto* cbr = app.add_subcommand("cbr", "Benefit-cost ratios with and without environmental cost");
  cbr->add_option("--scenario", scenario_path, "Run the scenario pipeline and report its ratios");
  cbr->add_option("--ledger", ledger_path, "Project ledger (JSON)");
  cbr->add_option("--valuation", valuation_path, "Service valuation (JSON, as emitted by value/run)");
  cbr->add_option("--discount-rate", discount, "Annual discount rate for the environmental cost");
  cbr->add_option("--credit", credit, "Avoided-degradation benefit credit ($)");
  add_common(cbr);

  auto* fc = app.add_subcommand("forecast", "Train an LSTM on a series and forecast ahead");
  fc->add_option("--series", series_path, "year,value rows")->required();
  fc->add_option("--quantity", quantity, "Value column to model (e.g. total_unit_value, theta)");
  fc->add_option("--window", train.window, "Input window length")->capture_default_str();
  fc->add_option("--epochs", train.epochs, "Gradient descent epochs")->capture_default_str();
  fc->add_option("--lr", train.learning_rate, "Learning rate")->capture_default_str();
  fc->add_option("--seed", train.seed, "Initialization seed")->capture_default_str();
  fc->add_option("--hidden", train.hidden_size, "Hidden units")->capture_default_str();
  fc->add_option("--horizon", horizon, "Steps to forecast")->capture_default_str();
  fc->add_option("--min", lo, "Lower normalization bound");
  fc->add_option("--max", hi, "Upper normalization bound");
  add_common(fc);

  auto* run = app.add_subcommand("run", "Run the full valuation pipeline on a scenario");
  run->add_option("--scenario", scenario_path, "Scenario file")->required();
  add_common(run);

  auto* tables = app.add_subcommand("tables", "Print the default factor tree and grade tables");
  add_common(tables);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const esv::ReportFormat fmt = common.report_format();
  try {
    if (*weights) {
      esv::EvaluationMatrix m;
      std::optional<std::vector<double>> prior;
      esv::Warnings ws;
      if (!scenario_path.empty()) {
        const esv::Scenario s = esv::load_scenario(scenario_path);
        m = s.matrix;
        prior = s.prior;
        uniform_fallback = uniform_fallback || s.options.uniform_fallback;
        esv::validate_matrix(m.to_rows(), &ws);
      } else if (!matrix_path.empty()) {
        m = esv::load_matrix_file(esv::resolve_data_path(matrix_path), &ws);
      } else {
        throw esv::Error(esv::ErrorCode::InvalidArgument, "weights needs --matrix or --scenario");
      }
      if (!prior_path.empty()) prior = read_prior(prior_path);
      print_warnings(ws);
      emit(common, esv::emit_entropy_report(esv::entropy_report(m, prior, {uniform_fallback}), fmt));
    } else if (*evaluate) {
      esv::Warnings ws;
      if (!scenario_path.empty()) {
        const esv::RunRecord rec = esv::run_pipeline(esv::load_scenario(scenario_path));
        print_warnings(rec.warnings);
        emit(common, esv::emit_fuzzy_result(rec.fuzzy, fmt));
        return 0;
      }
      if (observations_path.empty())
        throw esv::Error(esv::ErrorCode::InvalidArgument, "evaluate needs --observations or --scenario");
      const esv::ModelData model =
          tables_path.empty() ? esv::default_model_data() : esv::load_model_data(esv::resolve_data_path(tables_path));
      const esv::ObservationSet obs = esv::parse_observations(read_text(observations_path));
      esv::HierarchyWeights hw;
      if (weights_path.empty()) {
        hw.factor_weights = esv::WeightVector::uniform(esv::kFactorCount);
        for (auto& w : hw.sub_weights) w = esv::WeightVector::uniform(esv::kSubFactorsPerFactor);
      } else {
        hw = esv::parse_hierarchy_weights(read_text(weights_path), &ws);
      }
      esv::FuzzyOptions opts;
      if (membership == "trapezoidal") opts.membership = esv::MembershipMode::trapezoidal(width);
      print_warnings(ws);
      emit(common, esv::emit_fuzzy_result(esv::evaluate_observations(obs, model.tables, model.tree, hw, opts), fmt));
    } else if (*value) {
      const esv::Scenario s = esv::load_scenario(scenario_path);
      esv::ServiceValuation v;
      if (rho) {
        esv::Warnings ws;
        v = esv::value_scenario(s, *rho, nullptr, &ws);
        print_warnings(ws);
      } else {
        const esv::RunRecord rec = esv::run_pipeline(s);
        print_warnings(rec.warnings);
        v = rec.valuation;
      }
      emit(common, esv::emit_valuation(v, fmt));
    } else if (*cbr) {
      esv::ProjectLedger ledger;
      esv::ServiceValuation valuation;
      esv::CbrOptions opts;
      if (!scenario_path.empty()) {
        const esv::Scenario s = esv::load_scenario(scenario_path);
        const esv::RunRecord rec = esv::run_pipeline(s);
        print_warnings(rec.warnings);
        ledger = s.ledger;
        valuation = rec.valuation;
        opts = s.options.cbr;
      } else {
        if (ledger_path.empty() || valuation_path.empty())
          throw esv::Error(esv::ErrorCode::InvalidArgument, "cbr needs --ledger and --valuation, or --scenario");
        ledger = esv::parse_ledger(read_text(ledger_path));
        valuation = esv::parse_valuation(read_text(valuation_path));
      }
      if (discount) opts.discount_rate = *discount;
      if (credit) opts.avoided_degradation_credit = *credit;
      emit(common, esv::emit_cbr(esv::compare_scenarios(ledger, valuation, opts), fmt));
    } else if (*fc) {
      std::optional<std::pair<double, double>> bounds;
      if (lo.has_value() != hi.has_value())
        throw esv::Error(esv::ErrorCode::InvalidArgument, "--min and --max must be given together");
      if (lo) bounds = std::make_pair(*lo, *hi);
      const esv::SeriesDataset data(esv::load_series_file(esv::resolve_data_path(series_path), quantity), bounds);
      const esv::TrainedForecaster trained = esv::train(data, train);
      std::cerr << "training loss " << trained.initial_loss << " -> " << trained.final_loss << "\n";
      emit(common, esv::emit_forecast(esv::forecast(trained, data, horizon), fmt));
    } else if (*run) {
      const esv::RunRecord rec = esv::run_pipeline(esv::load_scenario(scenario_path));
      print_warnings(rec.warnings);
      emit(common, esv::emit_report(rec, fmt));
    } else if (*tables) {
      emit(common, esv::dump_model_data(esv::default_model_data()));
    }
  } catch (const esv::Error& e) {
    std::cerr << "error: " << esv::to_string(e.code()) << ": " << e.what() << "\n";
    return esv::is_input_error(e.code()) ? kExitInput : kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
