#include "core/model_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace msl {

nlohmann::ordered_json saved_model_to_json(const SavedModel& saved) {
  const Eigen::Index d = saved.model.m.dim();
  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) flat.push_back(saved.model.m(i, j));

  nlohmann::ordered_json j;
  j["d"] = static_cast<std::int64_t>(d);
  j["b"] = saved.model.b;
  j["M"] = flat;
  j["task"] = to_string(saved.task);
  j["norm"] = to_string(saved.norm);
  j["lambda"] = saved.lambda;
  return j;
}

SavedModel saved_model_from_json(const nlohmann::json& j) {
  const auto d = j.at("d").get<std::int64_t>();
  if (d < 1) throw std::invalid_argument("model: d must be >= 1");
  const auto flat = j.at("M").get<std::vector<double>>();
  if (flat.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d)) {
    throw std::invalid_argument("model: M must hold d*d entries");
  }
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k)
      m(i, k) = flat[static_cast<std::size_t>(i * d + k)];

  const auto task = task_from_string(j.at("task").get<std::string>());
  const auto norm = norm_kind_from_string(j.at("norm").get<std::string>());
  if (!task) throw std::invalid_argument("model: unknown task");
  if (!norm) throw std::invalid_argument("model: unknown norm");

  SavedModel out;
  out.model = Model{SymMatrix(m), j.at("b").get<double>()};
  out.task = *task;
  out.norm = *norm;
  out.lambda = j.at("lambda").get<double>();
  if (!std::isfinite(out.model.b)) throw std::invalid_argument("model: non-finite b");
  return out;
}

void save_model_json(const SavedModel& saved, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << saved_model_to_json(saved).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing model file: " + path);
}

SavedModel load_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  nlohmann::json j;
  in >> j;
  return saved_model_from_json(j);
}

}  // namespace msl
