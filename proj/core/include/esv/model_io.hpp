#pragma once

// Versioned JSON data file carrying the factor tree and its grade tables.
//
//   {
//     "schema_version": 1,
//     "factors": [
//       { "name": "...",
//         "sub_factors": [
//           { "name": "...", "unit": "...",
//             "direction": "higher_is_better" | "lower_is_better",
//             "bounds": [b1, b2, b3, b4],
//             "note": "..." },            // optional
//           ... 4 entries ] },
//       ... 5 entries ]
//   }
//
// Orientation is implied by direction (higher_is_better = Ascending).
// Unknown keys are rejected.

#include <filesystem>
#include <string>
#include <string_view>

#include "esv/model.hpp"

namespace esv {

inline constexpr int kModelDataSchemaVersion = 1;

struct ModelData {
  FactorTree tree;
  GradeTables tables;
};

ModelData default_model_data();

std::string dump_model_data(const ModelData& data);
ModelData parse_model_data(std::string_view text);
ModelData load_model_data(const std::filesystem::path& path);

}  // namespace esv
