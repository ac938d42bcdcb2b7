// msl - command line front end for the mslearn shared library.
//
// Exit codes: 0 success, 1 validation/usage error, 2 acceptance violation
// (an experiment with bound violations, or a failed oracle check).

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mslearn/mslearn.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

struct StringDeleter {
  void operator()(char* s) const { msl_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct DatasetDeleter {
  void operator()(msl_dataset* d) const { msl_dataset_free(d); }
};
using DatasetPtr = std::unique_ptr<msl_dataset, DatasetDeleter>;

struct ModelDeleter {
  void operator()(msl_model* m) const { msl_model_free(m); }
};
using ModelPtr = std::unique_ptr<msl_model, ModelDeleter>;

int fail(msl_status status) {
  std::fprintf(stderr, "error: %s: %s\n", msl_status_message(status),
               msl_last_error());
  return kExitUsage;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

bool write_file(const std::string& path, const char* contents) {
  std::ofstream out(path);
  if (!out) return false;
  out << contents;
  return static_cast<bool>(out);
}

DatasetPtr load_dataset(const std::string& path, msl_status& status) {
  msl_dataset* raw = nullptr;
  status = msl_dataset_load_csv(path.c_str(), &raw);
  return DatasetPtr(raw);
}

void print_check(const msl_check_result& check) {
  std::printf(
      "{\n  \"passed\": %s,\n  \"lhs\": %.17g,\n  \"rhs\": %.17g,\n"
      "  \"slack\": %.17g,\n  \"detail\": \"%s\"\n}\n",
      check.passed ? "true" : "false", check.lhs, check.rhs, check.slack,
      check.detail);
}

int run_train(const std::string& data_path, const std::string& task_name,
              const std::string& norm_name, double lambda, std::uint64_t seed,
              const std::string& out_path) {
  msl_task task;
  msl_norm norm;
  if (msl_task_parse(task_name.c_str(), &task) != MSL_OK) {
    std::fprintf(stderr, "error: unknown task '%s'\n", task_name.c_str());
    return kExitUsage;
  }
  if (msl_norm_parse(norm_name.c_str(), &norm) != MSL_OK) {
    std::fprintf(stderr, "error: unknown norm '%s'\n", norm_name.c_str());
    return kExitUsage;
  }
  msl_status status;
  DatasetPtr data = load_dataset(data_path, status);
  if (status != MSL_OK) return fail(status);

  msl_solver_config config;
  msl_solver_config_default(&config);
  config.seed = seed;

  msl_model* raw_model = nullptr;
  msl_fit_stats stats{};
  status = msl_fit(data.get(), task, norm, lambda, &config, &raw_model, &stats);
  if (status != MSL_OK) return fail(status);
  ModelPtr model(raw_model);

  status = msl_model_save_json(model.get(), out_path.c_str());
  if (status != MSL_OK) return fail(status);

  std::printf("{\n  \"final_objective\": %.17g,\n  \"iterations_run\": %u,\n"
              "  \"model\": \"%s\"\n}\n",
              stats.final_objective, stats.iterations_run, out_path.c_str());
  return kExitOk;
}

int run_risk(const std::string& data_path, const std::string& model_path) {
  msl_status status;
  DatasetPtr data = load_dataset(data_path, status);
  if (status != MSL_OK) return fail(status);

  msl_model* raw_model = nullptr;
  status = msl_model_load_json(model_path.c_str(), &raw_model);
  if (status != MSL_OK) return fail(status);
  ModelPtr model(raw_model);

  double risk = 0.0;
  status = msl_empirical_risk(model.get(), data.get(), &risk);
  if (status != MSL_OK) return fail(status);

  std::printf("{\n  \"risk\": %.17g,\n  \"n\": %zu,\n  \"task\": \"%s\"\n}\n",
              risk, msl_dataset_size(data.get()),
              msl_task_name(msl_model_task(model.get())));
  return kExitOk;
}

int run_rademacher(const std::string& data_path, const std::string& task_name,
                   const std::string& dual, std::uint64_t draws,
                   std::uint64_t seed, bool exact) {
  msl_task task;
  msl_norm norm;
  if (msl_task_parse(task_name.c_str(), &task) != MSL_OK) {
    std::fprintf(stderr, "error: unknown task '%s'\n", task_name.c_str());
    return kExitUsage;
  }
  if (msl_norm_parse_dual(dual.c_str(), &norm) != MSL_OK) {
    std::fprintf(stderr, "error: unknown dual norm '%s'\n", dual.c_str());
    return kExitUsage;
  }
  msl_status status;
  DatasetPtr data = load_dataset(data_path, status);
  if (status != MSL_OK) return fail(status);

  msl_rademacher_result result{};
  status = msl_rademacher(data.get(), task, norm, draws, seed, exact ? 1 : 0,
                          &result);
  if (status != MSL_OK) return fail(status);

  std::printf(
      "{\n  \"value\": %.17g,\n  \"std_error\": %.17g,\n  \"draws\": %" PRIu64
      ",\n  \"blocks\": %" PRIu64 ",\n  \"dual\": \"%s\"\n}\n",
      result.value, result.std_error, result.draws, result.block_count,
      msl_norm_dual_name(norm));
  return kExitOk;
}

int run_bound(const std::string& norm_name, const std::string& task_name,
              std::uint64_t n, std::uint64_t d, double lambda, double delta,
              const double* rn, const double* xstar) {
  msl_task task;
  msl_norm norm;
  if (msl_task_parse(task_name.c_str(), &task) != MSL_OK) {
    std::fprintf(stderr, "error: unknown task '%s'\n", task_name.c_str());
    return kExitUsage;
  }
  if (msl_norm_parse(norm_name.c_str(), &norm) != MSL_OK) {
    std::fprintf(stderr, "error: unknown norm '%s'\n", norm_name.c_str());
    return kExitUsage;
  }
  char* raw = nullptr;
  const msl_status status = msl_bound_report_json(task, norm, n, d, lambda,
                                                  delta, rn, xstar, &raw);
  if (status != MSL_OK) return fail(status);
  CString json(raw);
  std::fputs(json.get(), stdout);
  return kExitOk;
}

int run_experiment(const std::string& config_path, const std::string& out_path) {
  std::string config;
  if (!read_file(config_path, config)) {
    std::fprintf(stderr, "error: cannot read config '%s'\n", config_path.c_str());
    return kExitUsage;
  }
  char* raw = nullptr;
  std::uint64_t violations = 0;
  const msl_status status =
      msl_experiment_run_json(config.c_str(), &raw, &violations);
  if (status != MSL_OK) return fail(status);
  CString report(raw);
  if (!write_file(out_path, report.get())) {
    std::fprintf(stderr, "error: cannot write report '%s'\n", out_path.c_str());
    return kExitUsage;
  }
  std::printf("{\n  \"violations\": %" PRIu64 ",\n  \"report\": \"%s\"\n}\n",
              violations, out_path.c_str());
  return violations == 0 ? kExitOk : kExitViolation;
}

int run_scaling(const std::string& config_path, const std::string& out_path) {
  std::string config;
  if (!read_file(config_path, config)) {
    std::fprintf(stderr, "error: cannot read config '%s'\n", config_path.c_str());
    return kExitUsage;
  }
  char* raw = nullptr;
  const msl_status status = msl_scaling_run_csv(config.c_str(), &raw);
  if (status != MSL_OK) return fail(status);
  CString csv(raw);
  if (!write_file(out_path, csv.get())) {
    std::fprintf(stderr, "error: cannot write table '%s'\n", out_path.c_str());
    return kExitUsage;
  }
  std::printf("wrote %s\n", out_path.c_str());
  return kExitOk;
}

std::vector<double> parse_numbers(const std::string& csv) {
  std::vector<double> out;
  std::stringstream stream(csv);
  std::string field;
  while (std::getline(stream, field, ',')) {
    out.push_back(std::stod(field));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regularized metric/similarity learning: solver, Rademacher "
               "complexity estimates, and generalization-bound reports"};
  app.require_subcommand(1);

  // train
  std::string data_path, task_name = "metric", norm_name = "fro", out_path;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  auto* train = app.add_subcommand("train", "fit a model on a CSV dataset");
  train->add_option("--data", data_path, "dataset CSV")->required();
  train->add_option("--task", task_name, "metric|similarity")->required();
  train->add_option("--norm", norm_name, "fro|l1|l21|trace")->required();
  train->add_option("--lambda", lambda, "regularization weight")->required();
  train->add_option("--seed", seed, "solver seed");
  train->add_option("--out", out_path, "model JSON path")->required();

  // risk
  std::string model_path;
  auto* risk = app.add_subcommand("risk", "empirical risk of a model on a CSV dataset");
  risk->add_option("--data", data_path, "dataset CSV")->required();
  risk->add_option("--model", model_path, "model JSON")->required();

  // rademacher
  std::string dual = "fro";
  std::uint64_t draws = 100000;
  bool exact = false;
  auto* rad = app.add_subcommand(
      "rademacher", "empirical Rademacher complexity of the sample blocks");
  rad->add_option("--data", data_path, "dataset CSV")->required();
  rad->add_option("--task", task_name, "metric|similarity")->required();
  rad->add_option("--dual", dual, "fro|linf|l2inf|spectral")->required();
  rad->add_option("--draws", draws, "Monte Carlo draws");
  rad->add_option("--seed", seed, "draw seed");
  rad->add_flag("--exact", exact, "enumerate all 2^m sign vectors (m <= 20)");

  // bound
  std::uint64_t bound_n = 0, bound_d = 0;
  double delta = 0.05;
  double rn_value = 0.0, xstar_value = 0.0;
  auto* bound = app.add_subcommand("bound", "assemble a generalization bound report");
  bound->add_option("--norm", norm_name, "fro|l1|l21|trace")->required();
  bound->add_option("--task", task_name, "metric|similarity")->required();
  bound->add_option("--n", bound_n, "sample size")->required();
  bound->add_option("--d", bound_d, "dimension")->required();
  bound->add_option("--lambda", lambda, "regularization weight")->required();
  bound->add_option("--delta", delta, "confidence level in (0,1)")->required();
  auto* rn_opt = bound->add_option("--rn", rn_value,
                                   "complexity estimate (default: closed form)");
  auto* xstar_opt = bound->add_option(
      "--xstar", xstar_value, "dual-norm supremum (default: unit-box value)");

  // experiment
  std::string config_path;
  auto* experiment =
      app.add_subcommand("experiment", "gap-vs-bound study from a JSON config");
  experiment->add_option("--config", config_path, "config JSON")->required();
  experiment->add_option("--out", out_path, "report JSON path")->required();

  // scaling
  auto* scaling =
      app.add_subcommand("scaling", "complexity-vs-dimension study, CSV output");
  scaling->add_option("--config", config_path, "config JSON with dims/kinds")
      ->required();
  scaling->add_option("--out", out_path, "table CSV path")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "executable checks");
  oracle->require_subcommand(1);

  std::string f_csv;
  double kk_p = 2.0, kk_q = 4.0;
  auto* khinchin = oracle->add_subcommand(
      "khinchin", "moment comparison for a Rademacher sum (exact enumeration)");
  khinchin->add_option("--f", f_csv, "comma-separated coefficients")->required();
  khinchin->add_option("--p", kk_p, "lower exponent (> 1)");
  khinchin->add_option("--q", kk_q, "upper exponent (> p)");

  std::uint64_t ustat_n = 4;
  auto* ustat = oracle->add_subcommand(
      "ustat", "permutation representation of the pairwise risk");
  ustat->add_option("--n", ustat_n, "table size, 4 or 6")->required();
  ustat->add_option("--seed", seed, "random table seed");

  double tol = 1e-3;
  auto* margin = oracle->add_subcommand("margin", "minimizer margin conditions");
  margin->add_option("--data", data_path, "dataset CSV")->required();
  margin->add_option("--model", model_path, "model JSON")->required();
  margin->add_option("--tol", tol, "slack for optimizer output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (train->parsed()) {
    return run_train(data_path, task_name, norm_name, lambda, seed, out_path);
  }
  if (risk->parsed()) return run_risk(data_path, model_path);
  if (rad->parsed()) {
    return run_rademacher(data_path, task_name, dual, draws, seed, exact);
  }
  if (bound->parsed()) {
    return run_bound(norm_name, task_name, bound_n, bound_d, lambda, delta,
                     rn_opt->count() ? &rn_value : nullptr,
                     xstar_opt->count() ? &xstar_value : nullptr);
  }
  if (experiment->parsed()) return run_experiment(config_path, out_path);
  if (scaling->parsed()) return run_scaling(config_path, out_path);
  if (oracle->parsed()) {
    msl_check_result check{};
    msl_status status = MSL_OK;
    if (khinchin->parsed()) {
      std::vector<double> f;
      try {
        f = parse_numbers(f_csv);
      } catch (const std::exception&) {
        std::fprintf(stderr, "error: bad coefficient list '%s'\n", f_csv.c_str());
        return kExitUsage;
      }
      status = msl_check_khinchin(f.data(), f.size(), kk_p, kk_q, &check);
    } else if (ustat->parsed()) {
      status = msl_check_ustat_random(ustat_n, seed, &check);
    } else if (margin->parsed()) {
      msl_status load_status;
      DatasetPtr data = load_dataset(data_path, load_status);
      if (load_status != MSL_OK) return fail(load_status);
      msl_model* raw_model = nullptr;
      load_status = msl_model_load_json(model_path.c_str(), &raw_model);
      if (load_status != MSL_OK) return fail(load_status);
      ModelPtr model(raw_model);
      status = msl_check_margin(model.get(), data.get(), tol, &check);
    }
    if (status != MSL_OK) return fail(status);
    print_check(check);
    return check.passed ? kExitOk : kExitViolation;
  }
  return kExitUsage;
}
