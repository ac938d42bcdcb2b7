#include "core/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "core/norms.hpp"
#include "core/pairwise.hpp"
#include "core/rng.hpp"

namespace msl {

namespace {

constexpr std::uint64_t kTestStream = 0x7E57;
constexpr std::uint64_t kDrawStream = 0x4D43;

nlohmann::ordered_json check_result_to_json(const CheckResult& c) {
  nlohmann::ordered_json j;
  j["passed"] = c.passed;
  j["lhs"] = c.lhs;
  j["rhs"] = c.rhs;
  j["slack"] = c.slack;
  j["detail"] = c.detail;
  return j;
}

void validate(const ExperimentConfig& c) {
  if (c.d < 1) throw std::invalid_argument("experiment: d must be >= 1");
  if (c.n_train < 2 || c.n_test < 2) {
    throw std::invalid_argument("experiment: n_train and n_test must be >= 2");
  }
  if (c.lambda <= 0.0) throw std::invalid_argument("experiment: lambda must be > 0");
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    throw std::invalid_argument("experiment: delta must lie in (0, 1)");
  }
  if (c.repeats < 1) throw std::invalid_argument("experiment: repeats must be >= 1");
  if (c.mc_draws < 1) throw std::invalid_argument("experiment: mc_draws must be >= 1");
  if (c.domain.separation < 0.0) {
    throw std::invalid_argument("experiment: separation must be >= 0");
  }
}

}  // namespace

Dataset generate_synthetic(Eigen::Index d, std::uint64_t n, double separation,
                           std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("generate_synthetic: d must be >= 1");
  if (n < 2) throw std::invalid_argument("generate_synthetic: n must be >= 2");
  if (separation < 0.0) {
    throw std::invalid_argument("generate_synthetic: separation must be >= 0");
  }

  // Centers sit on the main diagonal around the box midpoint, `separation`
  // apart before clipping.
  const double offset = 0.5 * separation / std::sqrt(static_cast<double>(d));
  const double c0 = std::clamp(0.5 - offset, 0.0, 1.0);
  const double c1 = std::clamp(0.5 + offset, 0.0, 1.0);

  SplitMix64 rng(seed);
  const Eigen::Index rows = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd points(rows, d);
  std::vector<std::int64_t> labels(n);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::int64_t label = i % 2;
    labels[static_cast<std::size_t>(i)] = label;
    const double center = label == 0 ? c0 : c1;
    for (Eigen::Index k = 0; k < d; ++k) {
      const double noise = 0.5 * (rng.next_double() - 0.5);  // U[-0.25, 0.25)
      points(i, k) = std::clamp(center + noise, 0.0, 1.0);
    }
  }
  return Dataset(std::move(points), std::move(labels));
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);

  const double sup_inf = 1.0;
  const double sup_fro = std::sqrt(static_cast<double>(config.d));
  const double x_star = x_star_unit_box(config.task, config.kind, config.d);
  const double eps_opt = 10.0 * config.solver.tolerance;

  ExperimentReport report;
  report.config = config;
  report.repeats.reserve(config.repeats);

  double sum_r_n = 0.0;
  for (std::uint64_t r = 0; r < config.repeats; ++r) {
    const std::uint64_t repeat_seed = config.seed ^ r;
    const Dataset train = generate_synthetic(config.d, config.n_train,
                                             config.domain.separation, repeat_seed);
    const Dataset test =
        generate_synthetic(config.d, config.n_test, config.domain.separation,
                           counter_word(repeat_seed, kTestStream, 0));

    const FitResult fitted =
        fit(config.task, config.kind, config.lambda, train, config.solver);
    const Model& model = fitted.model;

    RepeatRecord rec;
    rec.repeat = r;
    rec.train_risk = empirical_risk(config.task, model, train);
    rec.test_risk = risk_estimate(config.task, model, test);
    rec.gap = rec.test_risk - rec.train_risk;

    const BlockSet blocks = build_blocks(config.task, train);
    const RademacherEstimate mc = empirical_rademacher(
        blocks, config.kind, config.mc_draws,
        counter_word(repeat_seed, kDrawStream, 0));
    rec.r_n_mc = mc.value;
    rec.r_n_mc_std_error = mc.std_error;

    const double r_n_closed = rademacher_upper_bound(
        config.kind, config.task, sup_inf, sup_fro, config.n_train, config.d);
    rec.bound = theorem_bound(config.task, config.kind, r_n_closed, x_star,
                              config.lambda, config.n_train, config.d,
                              config.delta, "closed-form-unit-box");

    rec.x_star_empirical = x_star_empirical(config.task, config.kind, train);
    rec.model_norm = matrix_norm(model.m, config.kind);
    rec.model_offset = model.b;
    rec.final_objective = fitted.final_objective;
    rec.margin = margin_check(config.task, model, train, eps_opt);
    {
      // |b| <= 1 + max_pairs ||block||_* ||M|| within the optimization slack.
      const double rhs = 1.0 + rec.x_star_empirical * rec.model_norm + eps_opt;
      CheckResult oc;
      oc.lhs = std::abs(model.b);
      oc.rhs = rhs;
      oc.slack = rhs - oc.lhs;
      oc.passed = oc.slack >= -1e-9;
      std::ostringstream detail;
      detail << "|b|=" << oc.lhs << " allowed=" << rhs;
      oc.detail = detail.str();
      rec.offset_bound = oc;
    }
    rec.violation = rec.gap > rec.bound.total;

    sum_r_n += rec.r_n_mc;
    report.max_gap = r == 0 ? rec.gap : std::max(report.max_gap, rec.gap);
    report.min_bound =
        r == 0 ? rec.bound.total : std::min(report.min_bound, rec.bound.total);
    if (rec.violation) ++report.violations;
    report.repeats.push_back(std::move(rec));
  }
  report.mean_r_n_mc = sum_r_n / static_cast<double>(config.repeats);
  return report;
}

ScalingTable scaling_study(const ExperimentConfig& base,
                           const std::vector<Eigen::Index>& dims,
                           const std::vector<NormKind>& kinds) {
  if (dims.empty()) throw std::invalid_argument("scaling_study: dims must be nonempty");
  for (const Eigen::Index d : dims) {
    if (d < 2) throw std::invalid_argument("scaling_study: every dim must be >= 2");
  }
  if (kinds.empty()) throw std::invalid_argument("scaling_study: kinds must be nonempty");

  ScalingTable table;
  table.base = base;
  table.dims = dims;
  table.kinds = kinds;

  for (const Eigen::Index d : dims) {
    const Dataset data =
        generate_synthetic(d, base.n_train, base.domain.separation,
                           counter_word(base.seed, 0xD1, static_cast<std::uint64_t>(d)));
    const BlockSet blocks = build_blocks(base.task, data);
    const auto estimates = empirical_rademacher_multi(
        blocks, kinds, base.mc_draws,
        counter_word(base.seed, kDrawStream, static_cast<std::uint64_t>(d)));

    const double sup_inf = 1.0;
    const double sup_fro = std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      ScalingCell cell;
      cell.d = d;
      cell.kind = kinds[k];
      cell.x_star = x_star_unit_box(base.task, kinds[k], d);
      cell.r_n_mc = estimates[k].value;
      cell.r_n_mc_std_error = estimates[k].std_error;
      cell.r_n_closed_form = rademacher_upper_bound(kinds[k], base.task, sup_inf,
                                                    sup_fro, base.n_train, d);
      cell.example_bound_total =
          example_bound(kinds[k], base.task, sup_inf, sup_fro, base.lambda,
                        base.n_train, d, base.delta)
              .total;
      table.cells.push_back(cell);
    }
  }

  // Least-squares slope of log r_n vs log d per dual kind.
  table.loglog_slopes.resize(kinds.size(), 0.0);
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double cnt = static_cast<double>(dims.size());
    for (std::size_t di = 0; di < dims.size(); ++di) {
      const ScalingCell& cell = table.cells[di * kinds.size() + k];
      const double lx = std::log(static_cast<double>(cell.d));
      const double ly = std::log(std::max(cell.r_n_mc, 1e-300));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double denom = cnt * sxx - sx * sx;
    table.loglog_slopes[k] = denom != 0.0 ? (cnt * sxy - sx * sy) / denom : 0.0;
  }
  return table;
}

std::string scaling_table_to_csv(const ScalingTable& table) {
  std::ostringstream out;
  const auto& b = table.base;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "# task=%s n=%llu lambda=%.17g delta=%.17g draws=%llu seed=%llu "
                "separation=%.17g log=natural e=%.17g\n",
                to_string(b.task), static_cast<unsigned long long>(b.n_train),
                b.lambda, b.delta, static_cast<unsigned long long>(b.mc_draws),
                static_cast<unsigned long long>(b.seed), b.domain.separation,
                std::numbers::e);
  out << buf;
  out << "d,norm,dual,x_star,rn_mc,rn_mc_std_error,rn_closed_form,"
         "example_bound_total,loglog_slope\n";
  for (std::size_t di = 0; di < table.dims.size(); ++di) {
    for (std::size_t k = 0; k < table.kinds.size(); ++k) {
      const ScalingCell& cell = table.cells[di * table.kinds.size() + k];
      std::snprintf(buf, sizeof buf,
                    "%lld,%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                    static_cast<long long>(cell.d), to_string(cell.kind),
                    dual_name(cell.kind), cell.x_star, cell.r_n_mc,
                    cell.r_n_mc_std_error, cell.r_n_closed_form,
                    cell.example_bound_total, table.loglog_slopes[k]);
      out << buf;
    }
  }
  return out.str();
}

nlohmann::ordered_json experiment_config_to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["task"] = to_string(c.task);
  j["kind"] = to_string(c.kind);
  j["d"] = static_cast<std::int64_t>(c.d);
  j["n_train"] = c.n_train;
  j["n_test"] = c.n_test;
  j["lambda"] = c.lambda;
  j["delta"] = c.delta;
  j["seed"] = c.seed;
  j["domain"] = {{"type", "unitbox"}, {"separation", c.domain.separation}};
  j["repeats"] = c.repeats;
  j["mc_draws"] = c.mc_draws;
  j["solver"] = {{"max_iters", c.solver.max_iters},
                 {"step_scale", c.solver.step_scale},
                 {"tolerance", c.solver.tolerance},
                 {"project", c.solver.project},
                 {"seed", c.solver.seed}};
  return j;
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  const auto task = task_from_string(j.at("task").get<std::string>());
  const auto kind = norm_kind_from_string(j.at("kind").get<std::string>());
  if (!task) throw std::invalid_argument("config: unknown task");
  if (!kind) throw std::invalid_argument("config: unknown kind");
  c.task = *task;
  c.kind = *kind;
  c.d = j.at("d").get<std::int64_t>();
  c.n_train = j.at("n_train").get<std::uint64_t>();
  c.n_test = j.at("n_test").get<std::uint64_t>();
  c.lambda = j.at("lambda").get<double>();
  c.delta = j.at("delta").get<double>();
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("domain")) {
    const auto& dom = j.at("domain");
    if (dom.value("type", std::string("unitbox")) != "unitbox") {
      throw std::invalid_argument("config: unknown domain type");
    }
    c.domain.separation = dom.value("separation", 0.5);
  }
  c.repeats = j.value("repeats", std::uint64_t{1});
  c.mc_draws = j.value("mc_draws", std::uint64_t{10000});
  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    c.solver.max_iters = s.value("max_iters", c.solver.max_iters);
    c.solver.step_scale = s.value("step_scale", c.solver.step_scale);
    c.solver.tolerance = s.value("tolerance", c.solver.tolerance);
    c.solver.project = s.value("project", c.solver.project);
    c.solver.seed = s.value("seed", c.solver.seed);
  }
  validate(c);
  return c;
}

nlohmann::ordered_json experiment_report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["config"] = experiment_config_to_json(report.config);
  j["conventions"] = {{"log", "natural"},
                      {"e", std::numbers::e},
                      {"r_n", "closed-form-unit-box"},
                      {"gap", "test_risk - train_risk (held-out estimate)"}};
  nlohmann::ordered_json reps = nlohmann::ordered_json::array();
  for (const RepeatRecord& r : report.repeats) {
    nlohmann::ordered_json e;
    e["repeat"] = r.repeat;
    e["train_risk"] = r.train_risk;
    e["test_risk"] = r.test_risk;
    e["gap"] = r.gap;
    e["bound"] = bound_report_to_json(r.bound);
    e["r_n_mc"] = r.r_n_mc;
    e["r_n_mc_std_error"] = r.r_n_mc_std_error;
    e["x_star_empirical"] = r.x_star_empirical;
    e["model_norm"] = r.model_norm;
    e["model_offset"] = r.model_offset;
    e["final_objective"] = r.final_objective;
    e["margin_check"] = check_result_to_json(r.margin);
    e["offset_check"] = check_result_to_json(r.offset_bound);
    e["violation"] = r.violation;
    reps.push_back(std::move(e));
  }
  j["repeats"] = std::move(reps);
  j["aggregates"] = {{"max_gap", report.max_gap},
                     {"min_bound", report.min_bound},
                     {"mean_r_n_mc", report.mean_r_n_mc},
                     {"violations", report.violations}};
  return j;
}

std::string experiment_report_json(const ExperimentReport& report) {
  return experiment_report_to_json(report).dump(2) + "\n";
}

}  // namespace msl
