// Drives the installed CLI binary (path in MSL_CLI) against the library via
// temp files, checking flags, output shape, and exit codes.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "core/csv.hpp"
#include "core/harness.hpp"
#include "core/model_io.hpp"
#include "core/pairwise.hpp"
#include "core/rademacher.hpp"

namespace {

std::string cli_path() {
  const char* env = std::getenv("MSL_CLI");
  REQUIRE_MESSAGE(env != nullptr, "MSL_CLI must point at the msl binary");
  return env;
}

std::string temp_name(const std::string& stem) {
  return "cli_" + stem + "_" + std::to_string(::getpid());
}

struct Command {
  int exit_code = -1;
  std::string stdout_text;
};

Command run(const std::string& args) {
  const std::string out_file = temp_name("stdout");
  const std::string cmd = cli_path() + " " + args + " > " + out_file + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  Command result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file);
  std::ostringstream buf;
  buf << in.rdbuf();
  result.stdout_text = buf.str();
  std::remove(out_file.c_str());
  return result;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Cleanup {
  std::string path;
  ~Cleanup() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("train then risk round trip") {
  const std::string csv = temp_name("train.csv");
  Cleanup c1{csv};
  const msl::Dataset data = msl::generate_synthetic(3, 24, 0.8, 11);
  msl::save_dataset_csv(data, csv);

  const std::string model_path = temp_name("model.json");
  Cleanup c2{model_path};
  const Command train = run("train --data " + csv +
                            " --task metric --norm l21 --lambda 0.5 --seed 4 "
                            "--out " + model_path);
  REQUIRE(train.exit_code == 0);
  const auto summary = nlohmann::json::parse(train.stdout_text);
  CHECK(summary["final_objective"].get<double>() <= 1.0 + 1e-4);

  const msl::SavedModel saved = msl::load_model_json(model_path);
  CHECK(saved.norm == msl::NormKind::kMixed21);
  CHECK(saved.lambda == 0.5);

  const Command risk = run("risk --data " + csv + " --model " + model_path);
  REQUIRE(risk.exit_code == 0);
  const auto risk_json = nlohmann::json::parse(risk.stdout_text);
  CHECK(risk_json["risk"].get<double>() ==
        doctest::Approx(msl::empirical_risk(saved.task, saved.model, data))
            .epsilon(1e-12));
  CHECK(risk_json["task"] == "metric");
}

TEST_CASE("rademacher subcommand matches the library") {
  const std::string csv = temp_name("rad.csv");
  Cleanup c1{csv};
  const msl::Dataset data = msl::generate_synthetic(3, 12, 0.5, 3);
  msl::save_dataset_csv(data, csv);

  const Command exact = run("rademacher --data " + csv +
                            " --task metric --dual linf --draws 10 --seed 9 --exact");
  REQUIRE(exact.exit_code == 0);
  const auto j = nlohmann::json::parse(exact.stdout_text);
  const auto blocks = msl::build_blocks(msl::Task::kMetric, data);
  const auto expected = msl::exact_rademacher(blocks, msl::NormKind::kEntrywiseL1);
  CHECK(j["value"].get<double>() == doctest::Approx(expected.value).epsilon(1e-12));
  CHECK(j["draws"] == 0);
  CHECK(j["dual"] == "linf");

  const Command mc = run("rademacher --data " + csv +
                         " --task metric --dual fro --draws 2000 --seed 9");
  REQUIRE(mc.exit_code == 0);
  const auto jm = nlohmann::json::parse(mc.stdout_text);
  const auto lib = msl::empirical_rademacher(blocks, msl::NormKind::kFrobenius,
                                             2000, 9);
  CHECK(jm["value"].get<double>() == doctest::Approx(lib.value).epsilon(1e-12));
}

TEST_CASE("bound subcommand") {
  const Command bound =
      run("bound --norm fro --task metric --n 100 --d 4 --lambda 1 --delta 0.05");
  REQUIRE(bound.exit_code == 0);
  const auto j = nlohmann::json::parse(bound.stdout_text);
  CHECK(j["r_n"].get<double>() == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(j["total"].get<double>() == j["term_rademacher"].get<double>() +
                                        j["term_sqrt_n"].get<double>() +
                                        j["term_confidence"].get<double>());

  const Command with_rn = run(
      "bound --norm fro --task metric --n 100 --d 4 --lambda 1 --delta 0.05 "
      "--rn 0.5 --xstar 2.0");
  REQUIRE(with_rn.exit_code == 0);
  const auto j2 = nlohmann::json::parse(with_rn.stdout_text);
  CHECK(j2["r_n"].get<double>() == 0.5);
  CHECK(j2["x_star"].get<double>() == 2.0);
  CHECK(j2["r_n_source"] == "user");
}

TEST_CASE("oracle subcommands and exit codes") {
  CHECK(run("oracle khinchin --f 1,1 --p 2 --q 4").exit_code == 0);
  CHECK(run("oracle ustat --n 4 --seed 21").exit_code == 0);
  CHECK(run("oracle ustat --n 6 --seed 22").exit_code == 0);
  CHECK(run("oracle ustat --n 5 --seed 1").exit_code == 1);
  CHECK(run("oracle khinchin --f 1,1 --p 4 --q 2").exit_code == 1);

  // A failing check exits 2.
  const std::string csv = temp_name("margin.csv");
  Cleanup c1{csv};
  msl::save_dataset_csv(msl::generate_synthetic(2, 6, 0.3, 2), csv);
  const std::string model_path = temp_name("bad_model.json");
  Cleanup c2{model_path};
  msl::save_model_json(
      msl::SavedModel{msl::Model{msl::SymMatrix::Zero(2), -3.0},
                      msl::Task::kMetric, msl::NormKind::kFrobenius, 1.0},
      model_path);
  const Command margin =
      run("oracle margin --data " + csv + " --model " + model_path + " --tol 0");
  CHECK(margin.exit_code == 2);
  const auto j = nlohmann::json::parse(margin.stdout_text);
  CHECK(j["passed"] == false);
}

TEST_CASE("validation failures exit 1") {
  CHECK(run("risk --data missing.csv --model missing.json").exit_code == 1);
  CHECK(run("train --data x.csv --task metric --norm bogus --lambda 1 --out m.json")
            .exit_code == 1);
  CHECK(run("nonsense").exit_code == 1);
}

TEST_CASE("experiment and scaling subcommands") {
  const std::string config_path = temp_name("config.json");
  Cleanup c1{config_path};
  {
    std::ofstream out(config_path);
    out << R"({
      "task": "similarity", "kind": "fro", "d": 3, "n_train": 20, "n_test": 24,
      "lambda": 1.0, "delta": 0.05, "seed": 13,
      "domain": {"type": "unitbox", "separation": 0.6},
      "repeats": 2, "mc_draws": 400,
      "solver": {"max_iters": 120},
      "dims": [4, 8], "kinds": ["fro", "l1"]
    })";
  }
  const std::string report_path = temp_name("report.json");
  Cleanup c2{report_path};
  const Command exp = run("experiment --config " + config_path + " --out " + report_path);
  REQUIRE(exp.exit_code == 0);
  const auto report = nlohmann::json::parse(read_file(report_path));
  CHECK(report["aggregates"]["violations"] == 0);
  CHECK(report["config"]["task"] == "similarity");

  const std::string csv_path = temp_name("scaling.csv");
  Cleanup c3{csv_path};
  const Command scal = run("scaling --config " + config_path + " --out " + csv_path);
  REQUIRE(scal.exit_code == 0);
  const std::string csv = read_file(csv_path);
  CHECK(csv.find("d,norm,dual,x_star") != std::string::npos);
  CHECK(csv.find("\n8,l1,linf,") != std::string::npos);
}
