#include "mslearn/mslearn.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/bounds.hpp"
#include "core/csv.hpp"
#include "core/harness.hpp"
#include "core/model_io.hpp"
#include "core/norms.hpp"
#include "core/oracles.hpp"
#include "core/pairwise.hpp"
#include "core/rademacher.hpp"
#include "core/rng.hpp"
#include "core/solver.hpp"

struct msl_dataset {
  msl::Dataset data;
};

struct msl_model {
  msl::SavedModel saved;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Translates core exceptions at the ABI boundary.
template <typename Fn>
msl_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return MSL_ERR_INVALID_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    set_error(e.what());
    return MSL_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return MSL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return MSL_ERR_IO;
  }
}

msl_status invalid(const char* msg) {
  set_error(msg);
  return MSL_ERR_INVALID_ARGUMENT;
}

msl::Task to_task(msl_task t) {
  return t == MSL_TASK_METRIC ? msl::Task::kMetric : msl::Task::kSimilarity;
}

msl_task from_task(msl::Task t) {
  return t == msl::Task::kMetric ? MSL_TASK_METRIC : MSL_TASK_SIMILARITY;
}

msl::NormKind to_norm(msl_norm k) {
  switch (k) {
    case MSL_NORM_FROBENIUS: return msl::NormKind::kFrobenius;
    case MSL_NORM_ENTRYWISE_L1: return msl::NormKind::kEntrywiseL1;
    case MSL_NORM_MIXED21: return msl::NormKind::kMixed21;
    case MSL_NORM_TRACE: break;
  }
  return msl::NormKind::kTrace;
}

msl_norm from_norm(msl::NormKind k) {
  switch (k) {
    case msl::NormKind::kFrobenius: return MSL_NORM_FROBENIUS;
    case msl::NormKind::kEntrywiseL1: return MSL_NORM_ENTRYWISE_L1;
    case msl::NormKind::kMixed21: return MSL_NORM_MIXED21;
    case msl::NormKind::kTrace: break;
  }
  return MSL_NORM_TRACE;
}

bool valid_task(msl_task t) {
  return t == MSL_TASK_METRIC || t == MSL_TASK_SIMILARITY;
}

bool valid_norm(msl_norm k) {
  return k == MSL_NORM_FROBENIUS || k == MSL_NORM_ENTRYWISE_L1 ||
         k == MSL_NORM_MIXED21 || k == MSL_NORM_TRACE;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_check(const msl::CheckResult& in, msl_check_result* out) {
  out->passed = in.passed ? 1 : 0;
  out->lhs = in.lhs;
  out->rhs = in.rhs;
  out->slack = in.slack;
  std::strncpy(out->detail, in.detail.c_str(), sizeof out->detail - 1);
  out->detail[sizeof out->detail - 1] = '\0';
}

}  // namespace

extern "C" {

const char* msl_status_message(msl_status status) {
  switch (status) {
    case MSL_OK: return "ok";
    case MSL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MSL_ERR_IO: return "i/o failure";
    case MSL_ERR_PARSE: return "parse failure";
    case MSL_ERR_INTERNAL: return "internal failure";
  }
  return "unknown status";
}

const char* msl_last_error(void) { return g_last_error.c_str(); }

void msl_string_free(char* s) { delete[] s; }

void msl_solver_config_default(msl_solver_config* out) {
  if (out == nullptr) return;
  const msl::SolverConfig def;
  out->max_iters = def.max_iters;
  out->step_scale = def.step_scale;
  out->tolerance = def.tolerance;
  out->project = def.project ? 1 : 0;
  out->seed = def.seed;
}

msl_status msl_task_parse(const char* name, msl_task* out) {
  if (name == nullptr || out == nullptr) return invalid("null argument");
  const auto t = msl::task_from_string(name);
  if (!t) return invalid("unknown task name");
  *out = from_task(*t);
  return MSL_OK;
}

msl_status msl_norm_parse(const char* name, msl_norm* out) {
  if (name == nullptr || out == nullptr) return invalid("null argument");
  const auto k = msl::norm_kind_from_string(name);
  if (!k) return invalid("unknown norm name");
  *out = from_norm(*k);
  return MSL_OK;
}

msl_status msl_norm_parse_dual(const char* name, msl_norm* out) {
  if (name == nullptr || out == nullptr) return invalid("null argument");
  const auto k = msl::norm_kind_from_dual_string(name);
  if (!k) return invalid("unknown dual norm name");
  *out = from_norm(*k);
  return MSL_OK;
}

const char* msl_task_name(msl_task task) { return msl::to_string(to_task(task)); }
const char* msl_norm_name(msl_norm norm) { return msl::to_string(to_norm(norm)); }
const char* msl_norm_dual_name(msl_norm norm) { return msl::dual_name(to_norm(norm)); }

msl_status msl_dataset_create(const double* points, const int64_t* labels,
                              size_t n, size_t d, msl_dataset** out) {
  if (points == nullptr || labels == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&]() {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < d; ++k)
        x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
            points[i * d + k];
    std::vector<std::int64_t> y(labels, labels + n);
    *out = new msl_dataset{msl::Dataset(std::move(x), std::move(y))};
    return MSL_OK;
  });
}

msl_status msl_dataset_load_csv(const char* path, msl_dataset** out) {
  if (path == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&]() {
    *out = new msl_dataset{msl::load_dataset_csv(path)};
    return MSL_OK;
  });
}

msl_status msl_dataset_save_csv(const msl_dataset* data, const char* path) {
  if (data == nullptr || path == nullptr) return invalid("null argument");
  return guarded([&]() {
    msl::save_dataset_csv(data->data, path);
    return MSL_OK;
  });
}

msl_status msl_dataset_generate(size_t d, size_t n, double separation,
                                uint64_t seed, msl_dataset** out) {
  if (out == nullptr) return invalid("null argument");
  return guarded([&]() {
    *out = new msl_dataset{msl::generate_synthetic(
        static_cast<Eigen::Index>(d), n, separation, seed)};
    return MSL_OK;
  });
}

size_t msl_dataset_size(const msl_dataset* data) {
  return data == nullptr ? 0 : static_cast<size_t>(data->data.size());
}

size_t msl_dataset_dim(const msl_dataset* data) {
  return data == nullptr ? 0 : static_cast<size_t>(data->data.dim());
}

void msl_dataset_free(msl_dataset* data) { delete data; }

msl_status msl_fit(const msl_dataset* data, msl_task task, msl_norm norm,
                   double lambda, const msl_solver_config* config,
                   msl_model** out, msl_fit_stats* stats) {
  if (data == nullptr || out == nullptr) return invalid("null argument");
  if (!valid_task(task) || !valid_norm(norm)) return invalid("bad enum value");
  return guarded([&]() {
    msl::SolverConfig cfg;
    if (config != nullptr) {
      cfg.max_iters = config->max_iters;
      cfg.step_scale = config->step_scale;
      cfg.tolerance = config->tolerance;
      cfg.project = config->project != 0;
      cfg.seed = config->seed;
    }
    msl::FitResult res =
        msl::fit(to_task(task), to_norm(norm), lambda, data->data, cfg);
    if (stats != nullptr) {
      stats->final_objective = res.final_objective;
      stats->iterations_run = res.iterations_run;
    }
    *out = new msl_model{
        msl::SavedModel{std::move(res.model), to_task(task), to_norm(norm), lambda}};
    return MSL_OK;
  });
}

msl_status msl_model_load_json(const char* path, msl_model** out) {
  if (path == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&]() {
    *out = new msl_model{msl::load_model_json(path)};
    return MSL_OK;
  });
}

msl_status msl_model_save_json(const msl_model* model, const char* path) {
  if (model == nullptr || path == nullptr) return invalid("null argument");
  return guarded([&]() {
    msl::save_model_json(model->saved, path);
    return MSL_OK;
  });
}

size_t msl_model_dim(const msl_model* model) {
  return model == nullptr ? 0 : static_cast<size_t>(model->saved.model.m.dim());
}

double msl_model_offset(const msl_model* model) {
  return model == nullptr ? 0.0 : model->saved.model.b;
}

msl_task msl_model_task(const msl_model* model) {
  return model == nullptr ? MSL_TASK_METRIC : from_task(model->saved.task);
}

msl_norm msl_model_norm(const msl_model* model) {
  return model == nullptr ? MSL_NORM_FROBENIUS : from_norm(model->saved.norm);
}

double msl_model_lambda(const msl_model* model) {
  return model == nullptr ? 0.0 : model->saved.lambda;
}

msl_status msl_model_matrix(const msl_model* model, double* out) {
  if (model == nullptr || out == nullptr) return invalid("null argument");
  const Eigen::Index d = model->saved.model.m.dim();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      out[static_cast<size_t>(i * d + j)] = model->saved.model.m(i, j);
  return MSL_OK;
}

void msl_model_free(msl_model* model) { delete model; }

msl_status msl_empirical_risk(const msl_model* model, const msl_dataset* data,
                              double* out) {
  if (model == nullptr || data == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&]() {
    *out = msl::empirical_risk(model->saved.task, model->saved.model, data->data);
    return MSL_OK;
  });
}

msl_status msl_block_risk(const msl_model* model, const msl_dataset* data,
                          double* out) {
  if (model == nullptr || data == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&]() {
    *out = msl::block_risk(model->saved.task, model->saved.model, data->data);
    return MSL_OK;
  });
}

msl_status msl_rademacher(const msl_dataset* data, msl_task task, msl_norm norm,
                          uint64_t draws, uint64_t seed, int exact,
                          msl_rademacher_result* out) {
  if (data == nullptr || out == nullptr) return invalid("null argument");
  if (!valid_task(task) || !valid_norm(norm)) return invalid("bad enum value");
  return guarded([&]() {
    const msl::BlockSet blocks = msl::build_blocks(to_task(task), data->data);
    const msl::RademacherEstimate est =
        exact != 0 ? msl::exact_rademacher(blocks, to_norm(norm))
                   : msl::empirical_rademacher(blocks, to_norm(norm), draws, seed);
    out->value = est.value;
    out->std_error = est.std_error;
    out->draws = est.draws;
    out->block_count = blocks.count();
    return MSL_OK;
  });
}

msl_status msl_x_star_unit_box(msl_task task, msl_norm norm, size_t d,
                               double* out) {
  if (out == nullptr) return invalid("null argument");
  if (!valid_task(task) || !valid_norm(norm)) return invalid("bad enum value");
  return guarded([&]() {
    *out = msl::x_star_unit_box(to_task(task), to_norm(norm),
                                static_cast<Eigen::Index>(d));
    return MSL_OK;
  });
}

msl_status msl_x_star_empirical(msl_task task, msl_norm norm,
                                const msl_dataset* data, double* out) {
  if (data == nullptr || out == nullptr) return invalid("null argument");
  if (!valid_task(task) || !valid_norm(norm)) return invalid("bad enum value");
  return guarded([&]() {
    *out = msl::x_star_empirical(to_task(task), to_norm(norm), data->data);
    return MSL_OK;
  });
}

msl_status msl_rademacher_closed_form(msl_norm norm, msl_task task,
                                      double sup_inf, double sup_fro,
                                      uint64_t n, size_t d, double* out) {
  if (out == nullptr) return invalid("null argument");
  if (!valid_task(task) || !valid_norm(norm)) return invalid("bad enum value");
  return guarded([&]() {
    *out = msl::rademacher_upper_bound(to_norm(norm), to_task(task), sup_inf,
                                       sup_fro, n, static_cast<Eigen::Index>(d));
    return MSL_OK;
  });
}

msl_status msl_bound_report_json(msl_task task, msl_norm norm, uint64_t n,
                                 size_t d, double lambda, double delta,
                                 const double* rn, const double* xstar,
                                 char** out_json) {
  if (out_json == nullptr) return invalid("null argument");
  if (!valid_task(task) || !valid_norm(norm)) return invalid("bad enum value");
  return guarded([&]() {
    const msl::Task t = to_task(task);
    const msl::NormKind k = to_norm(norm);
    const Eigen::Index dd = static_cast<Eigen::Index>(d);
    const double sup_inf = 1.0;
    const double sup_fro = std::sqrt(static_cast<double>(d));
    double r_n;
    std::string source;
    if (rn != nullptr) {
      r_n = *rn;
      source = "user";
    } else {
      r_n = msl::rademacher_upper_bound(k, t, sup_inf, sup_fro, n, dd);
      source = "closed-form-unit-box";
    }
    const double xs =
        xstar != nullptr ? *xstar : msl::x_star_unit_box(t, k, dd);
    const msl::BoundReport rep =
        msl::theorem_bound(t, k, r_n, xs, lambda, n, dd, delta, source);
    *out_json = dup_string(msl::bound_report_to_json(rep).dump(2) + "\n");
    return MSL_OK;
  });
}

msl_status msl_check_khinchin(const double* f, size_t len, double p, double q,
                              msl_check_result* out) {
  if ((f == nullptr && len > 0) || out == nullptr) return invalid("null argument");
  return guarded([&]() {
    const msl::CheckResult r = msl::khinchin_check({f, len}, p, q);
    fill_check(r, out);
    return MSL_OK;
  });
}

msl_status msl_check_ustat(const double* values, size_t n,
                           msl_check_result* out) {
  if (values == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&]() {
    const Eigen::Index nn = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd table(nn, nn);
    for (Eigen::Index i = 0; i < nn; ++i)
      for (Eigen::Index j = 0; j < nn; ++j)
        table(i, j) = values[static_cast<size_t>(i * nn + j)];
    const msl::CheckResult r =
        msl::ustat_permutation_check(table, static_cast<int>(n));
    fill_check(r, out);
    return MSL_OK;
  });
}

msl_status msl_check_ustat_random(size_t n, uint64_t seed,
                                  msl_check_result* out) {
  if (out == nullptr) return invalid("null argument");
  return guarded([&]() {
    const Eigen::Index nn = static_cast<Eigen::Index>(n);
    if (nn < 1) throw std::invalid_argument("ustat: n must be positive");
    msl::SplitMix64 rng(seed);
    Eigen::MatrixXd table(nn, nn);
    for (Eigen::Index i = 0; i < nn; ++i) {
      for (Eigen::Index j = i; j < nn; ++j) {
        const double v = rng.next_double() * 2.0 - 1.0;
        table(i, j) = v;
        table(j, i) = v;
      }
    }
    const msl::CheckResult r =
        msl::ustat_permutation_check(table, static_cast<int>(n));
    fill_check(r, out);
    return MSL_OK;
  });
}

msl_status msl_check_margin(const msl_model* model, const msl_dataset* data,
                            double tol, msl_check_result* out) {
  if (model == nullptr || data == nullptr || out == nullptr) {
    return invalid("null argument");
  }
  return guarded([&]() {
    const msl::CheckResult r =
        msl::margin_check(model->saved.task, model->saved.model, data->data, tol);
    fill_check(r, out);
    return MSL_OK;
  });
}

msl_status msl_experiment_run_json(const char* config_json, char** report_json,
                                   uint64_t* violations) {
  if (config_json == nullptr || report_json == nullptr) {
    return invalid("null argument");
  }
  return guarded([&]() {
    const nlohmann::json j = nlohmann::json::parse(config_json);
    const msl::ExperimentConfig config = msl::experiment_config_from_json(j);
    const msl::ExperimentReport report = msl::run_experiment(config);
    *report_json = dup_string(msl::experiment_report_json(report));
    if (violations != nullptr) *violations = report.violations;
    return MSL_OK;
  });
}

msl_status msl_scaling_run_csv(const char* config_json, char** csv_out) {
  if (config_json == nullptr || csv_out == nullptr) return invalid("null argument");
  return guarded([&]() {
    const nlohmann::json j = nlohmann::json::parse(config_json);
    const msl::ExperimentConfig base = msl::experiment_config_from_json(j);
    std::vector<Eigen::Index> dims;
    for (const auto& v : j.at("dims")) dims.push_back(v.get<std::int64_t>());
    std::vector<msl::NormKind> kinds;
    if (j.contains("kinds")) {
      for (const auto& v : j.at("kinds")) {
        const auto k = msl::norm_kind_from_string(v.get<std::string>());
        if (!k) throw std::invalid_argument("scaling: unknown kind name");
        kinds.push_back(*k);
      }
    } else {
      kinds = {msl::NormKind::kFrobenius, msl::NormKind::kEntrywiseL1,
               msl::NormKind::kMixed21};
    }
    const msl::ScalingTable table = msl::scaling_study(base, dims, kinds);
    *csv_out = dup_string(msl::scaling_table_to_csv(table));
    return MSL_OK;
  });
}

}  // extern "C"
