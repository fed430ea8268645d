#include "esv/error.hpp"

namespace esv {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::CrossRefError: return "CrossRefError";
    case ErrorCode::EmptyMatrix: return "EmptyMatrix";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::MissingObservation: return "MissingObservation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidCalibration: return "InvalidCalibration";
    case ErrorCode::InvalidGradeTable: return "InvalidGradeTable";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DegenerateBounds: return "DegenerateBounds";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::AllZeroColumn: return "AllZeroColumn";
    case ErrorCode::SingleRow: return "SingleRow";
    case ErrorCode::AllMaxEntropy: return "AllMaxEntropy";
    case ErrorCode::ZeroOverlap: return "ZeroOverlap";
    case ErrorCode::ZeroArea: return "ZeroArea";
    case ErrorCode::ZeroQ: return "ZeroQ";
    case ErrorCode::NegativeCost: return "NegativeCost";
    case ErrorCode::ZeroCost: return "ZeroCost";
    case ErrorCode::UnknownReconstruction: return "UnknownReconstruction";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  return code <= ErrorCode::DegenerateBounds;
}

std::string_view to_string(WarningCode code) {
  switch (code) {
    case WarningCode::AllZeroColumn: return "AllZeroColumn";
    case WarningCode::WeightsRenormalized: return "WeightsRenormalized";
    case WarningCode::RowsRenormalized: return "RowsRenormalized";
    case WarningCode::NegativeValue: return "NegativeValue";
  }
  return "Unknown";
}

}  // namespace esv
