#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace esv {

enum class ErrorCode {
  // input errors (exit code 1)
  ParseError,
  SchemaVersionMismatch,
  CrossRefError,
  EmptyMatrix,
  RaggedRows,
  NegativeEntry,
  NonFiniteEntry,
  MissingObservation,
  DimensionMismatch,
  ShapeMismatch,
  InvalidArgument,
  InvalidCalibration,
  InvalidGradeTable,
  InsufficientData,
  DegenerateBounds,
  // computation errors (exit code 2)
  NotNormalized,
  AllZeroColumn,
  SingleRow,
  AllMaxEntropy,
  ZeroOverlap,
  ZeroArea,
  ZeroQ,
  NegativeCost,
  ZeroCost,
  UnknownReconstruction,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by malformed or out-of-domain input, as opposed to
/// a numerical stage that cannot produce a result.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Error raised inside a pipeline stage; `stage()` names the stage
/// ("weights", "fuzzy", "valuation", "cost-benefit").
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.code(), "[" + stage + "] " + cause.what()),
        stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

enum class WarningCode {
  AllZeroColumn,
  WeightsRenormalized,
  RowsRenormalized,
  NegativeValue,
};

std::string_view to_string(WarningCode code);

struct Warning {
  WarningCode code;
  std::string message;

  bool operator==(const Warning&) const = default;
};

using Warnings = std::vector<Warning>;

inline void warn(Warnings* sink, WarningCode code, std::string message) {
  if (sink != nullptr) sink->push_back({code, std::move(message)});
}

inline bool has_warning(const Warnings& ws, WarningCode code) {
  for (const auto& w : ws)
    if (w.code == code) return true;
  return false;
}

}  // namespace esv
