#pragma once

// Report emission. "structured" is JSON that reloads losslessly (binary64
// values are written in shortest round-trip form); "text" is a human-readable
// summary with 17 significant digits.

#include <string>
#include <string_view>
#include <vector>

#include "esv/cost_benefit.hpp"
#include "esv/forecast.hpp"
#include "esv/fuzzy.hpp"
#include "esv/pipeline.hpp"
#include "esv/valuation.hpp"
#include "esv/weights.hpp"

namespace esv {

enum class ReportFormat { Text, Structured };

inline constexpr int kReportSchemaVersion = 1;

std::string emit_report(const RunRecord& record, ReportFormat format);
RunRecord parse_run_record(std::string_view structured);

/// Structured record without timestamp and version: identical across runs
/// of the same scenario.
std::string numeric_payload(const RunRecord& record);

std::string emit_entropy_report(const EntropyReport& report, ReportFormat format);
std::string emit_fuzzy_result(const FuzzyResult& result, ReportFormat format);
std::string emit_valuation(const ServiceValuation& valuation, ReportFormat format);
std::string emit_cbr(const CbrReport& report, ReportFormat format);
std::string emit_forecast(const std::vector<SeriesPoint>& rows, ReportFormat format);

/// Accepts a valuation document or a full run record.
ServiceValuation parse_valuation(std::string_view text);
/// Accepts a ledger document or a scenario (its "ledger" member).
ProjectLedger parse_ledger(std::string_view text);

/// {"factor_weights": [5], "sub_weights": [[4] x 5]} (sub_weights optional,
/// uniform when absent). Factor weights are renormalized with a warning.
HierarchyWeights parse_hierarchy_weights(std::string_view text, Warnings* warnings = nullptr);

}  // namespace esv
