#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "core/types.hpp"

namespace msl {

// Model together with the training metadata recorded in the persistence
// format: { "d", "b", "M" (row-major), "task", "norm", "lambda" }.
struct SavedModel {
  Model model;
  Task task = Task::kMetric;
  NormKind norm = NormKind::kFrobenius;
  double lambda = 0.0;
};

nlohmann::ordered_json saved_model_to_json(const SavedModel& saved);
SavedModel saved_model_from_json(const nlohmann::json& j);

void save_model_json(const SavedModel& saved, const std::string& path);
SavedModel load_model_json(const std::string& path);

}  // namespace msl
