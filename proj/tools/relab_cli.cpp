// SPDX-License-Identifier: Apache-2.0
//
// relab: command-line front end for the EPR, twin-chart and retarded
// dynamics engines.
//
// Exit codes: 0 success, 1 internal error, 2 usage error, 3 parse error,
// 4 collision abort, 5 insufficient history, 6 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relab/aging.hpp"
#include "relab/electrodynamics.hpp"
#include "relab/epr.hpp"
#include "relab/errors.hpp"
#include "relab/io.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kParse = 3,
  kCollision = 4,
  kInsufficientHistory = 5,
  kNumerical = 6,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kRad = std::numbers::pi / 180.0;

// Relative output paths land in $RELAB_OUTPUT_DIR when it is set.
std::filesystem::path resolve_output(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("RELAB_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
      p = std::filesystem::path(dir) / p;
    }
  }
  return p;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const auto p = resolve_output(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

struct EprArgs {
  double theta1 = 0.0;
  double theta2 = 0.0;
  bool radians = false;
  std::string estimator = "both";
  std::string mode = "exact";
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;
  unsigned chunks = 1;
  bool chsh = false;
  std::vector<double> angles;
  bool decompose = false;
  double scan_step = 0.0;
  std::string format = "csv";
  std::string output;
};

struct TwinArgs {
  double distance = 0.0;
  double beta = 0.0;
  std::string chart;
  int resolution = 101;
  double length_scale = 1.0;
  std::string format = "csv";
  std::string output;
};

struct DynamicsArgs {
  std::string config;
  std::string output;
  std::string summary;
  bool include_history = false;
};

int run_epr(const EprArgs& a) {
  using namespace relab;
  const double unit = a.radians ? 1.0 : kRad;
  std::ostringstream out;

  if (a.chsh) {
    if (a.angles.size() != 4) throw UsageError("--chsh needs --angles a,a',b,b'");
    const double x = a.angles[0] * unit, xp = a.angles[1] * unit;
    const double y = a.angles[2] * unit, yp = a.angles[3] * unit;
    const auto mode = epr::parse_mode(a.mode);
    const double analytic = epr::chsh(x, xp, y, yp);
    const double value = mode == epr::Mode::exact ? analytic
                                                  : epr::chsh_sampled(x, xp, y, yp, a.trials, a.seed);
    const double deg = a.radians ? 1.0 / kRad : 1.0;
    if (a.format == "json") {
      out << "{\"a_deg\": " << io::fmt(a.angles[0] * deg) << ", \"a_prime_deg\": "
          << io::fmt(a.angles[1] * deg) << ", \"b_deg\": " << io::fmt(a.angles[2] * deg)
          << ", \"b_prime_deg\": " << io::fmt(a.angles[3] * deg) << ", \"mode\": \"" << a.mode
          << "\", \"trials\": " << (mode == epr::Mode::exact ? 0 : a.trials)
          << ", \"S\": " << io::fmt(value) << ", \"analytic\": " << io::fmt(analytic)
          << ", \"bound_local\": 2, \"bound_tsirelson\": " << io::fmt(2.0 * std::numbers::sqrt2)
          << "}\n";
    } else {
      out << "a_deg,a_prime_deg,b_deg,b_prime_deg,mode,trials,S,analytic\n"
          << io::fmt(a.angles[0] * deg) << ',' << io::fmt(a.angles[1] * deg) << ','
          << io::fmt(a.angles[2] * deg) << ',' << io::fmt(a.angles[3] * deg) << ',' << a.mode << ','
          << (mode == epr::Mode::exact ? 0 : a.trials) << ',' << io::fmt(value) << ','
          << io::fmt(analytic) << '\n';
    }
    emit(a.output, out.str());
    return kOk;
  }

  if (a.decompose) {
    const double t1 = a.theta1 * unit, t2 = a.theta2 * unit;
    const auto r = epr::bayes_decomposition(t1, t2);
    out << "theta1_deg,theta2_deg,marginal,factorization_holds,deviation,p_a_n0,p_a_n1,p_b_n0,"
           "p_b_n1,p_b_given_a_n0,p_b_given_a_n1\n"
        << io::fmt(t1 / kRad) << ',' << io::fmt(t2 / kRad) << ',' << io::fmt(r.marginal) << ','
        << (r.factorization_holds ? "true" : "false") << ','
        << io::fmt(r.deviation_from_analytic) << ',' << io::fmt(r.p_a_given_lambda[0]) << ','
        << io::fmt(r.p_a_given_lambda[1]) << ',' << io::fmt(r.p_b_given_lambda[0]) << ','
        << io::fmt(r.p_b_given_lambda[1]) << ',' << io::fmt(r.p_b_given_a_lambda[0]) << ','
        << io::fmt(r.p_b_given_a_lambda[1]) << '\n';
    emit(a.output, out.str());
    return kOk;
  }

  std::vector<epr::Estimator> estimators;
  if (a.estimator == "both") {
    estimators = {epr::Estimator::amplitude, epr::Estimator::intensity};
  } else {
    estimators = {epr::parse_estimator(a.estimator)};
  }
  epr::EstimateOptions opt;
  opt.mode = epr::parse_mode(a.mode);
  opt.trials = a.trials;
  opt.chunks = a.chunks;
  if (opt.mode == epr::Mode::sampled && a.trials == 0) throw UsageError("--trials must be >= 1");

  std::vector<std::pair<double, double>> pairs;
  if (a.scan_step > 0.0) {
    const double step = a.scan_step * unit;
    const int n = static_cast<int>(std::floor(std::numbers::pi / step + 1e-9));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pairs.emplace_back(i * step, j * step);
  } else {
    pairs.emplace_back(a.theta1 * unit, a.theta2 * unit);
  }

  std::vector<io::EprRecord> rows;
  std::uint64_t cell = 0;
  for (const auto& [t1, t2] : pairs) {
    for (const auto est : estimators) {
      opt.estimator = est;
      opt.seed = pairs.size() == 1 && estimators.size() == 1 ? a.seed
                                                             : epr::derive_seed(a.seed, cell);
      ++cell;
      rows.push_back(io::make_epr_record(t1, t2, opt));
    }
  }
  if (a.format == "json") {
    out << io::epr_json(rows) << '\n';
  } else {
    out << io::epr_csv_header() << '\n';
    for (const auto& r : rows) out << io::epr_csv_row(r) << '\n';
  }
  emit(a.output, out.str());
  return kOk;
}

int run_twin(const TwinArgs& a) {
  using namespace relab;
  const aging::TwinScenario s{a.distance, a.beta};
  try {
    aging::validate(s);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (!(a.length_scale > 0.0)) throw UsageError("--length-scale must be > 0");
  const std::vector<aging::TwinReport> rows = {aging::chart_conventional(s),
                                               aging::chart_equal_aging(s)};
  std::ostringstream out;
  if (a.format == "json") {
    out << io::twin_json(rows, a.length_scale) << '\n';
  } else {
    out << io::twin_csv_header() << '\n';
    for (const auto& r : rows) out << io::twin_csv_row(r, a.length_scale) << '\n';
  }
  emit(a.output, out.str());
  if (!a.chart.empty()) {
    if (a.resolution < 2) throw UsageError("--resolution must be >= 2");
    emit(a.chart, io::chart_to_json(aging::emit_chart(s, a.resolution)) + "\n");
  }
  return kOk;
}

int run_dynamics(const DynamicsArgs& a) {
  using namespace relab;
  std::ifstream in(a.config);
  if (!in) throw io::ParseError("cannot open config " + a.config);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto base = std::filesystem::path(a.config).parent_path();
  ed::SystemState state = io::parse_system_config(buf.str(), base.empty() ? "." : base.string());

  const auto report = ed::check_initial_data(state);
  if (!report.valid) {
    std::cerr << "relab dynamics: insufficient initial history: " << report.message << '\n';
    return kInsufficientHistory;
  }

  const ed::IntegrationResult result = ed::integrate(std::move(state));
  std::ostringstream traj;
  io::write_trajectory_csv(traj,
                           result.state,
                           a.include_history ? -std::numeric_limits<double>::infinity()
                                             : result.tau_start);
  emit(a.output, traj.str());
  const std::string summary = io::diagnostics_summary_json(result) + "\n";
  if (!a.summary.empty()) {
    emit(a.summary, summary);
  } else {
    std::cerr << summary;
  }
  switch (result.status) {
    case ed::IntegrationStatus::completed: return kOk;
    case ed::IntegrationStatus::collision:
      std::cerr << "relab dynamics: " << result.message << '\n';
      return kCollision;
    case ed::IntegrationStatus::insufficient_history:
      std::cerr << "relab dynamics: " << result.message << '\n';
      return kInsufficientHistory;
    case ed::IntegrationStatus::numerical_failure:
      std::cerr << "relab dynamics: " << result.message << '\n';
      return kNumerical;
  }
  return kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relab: EPR correlations, twin-chart constructions and retarded dynamics"};
  app.require_subcommand(1);

  EprArgs epr_args;
  auto* epr = app.add_subcommand("epr", "coincidence estimates, CHSH and decomposition audit");
  epr->add_option("--theta1", epr_args.theta1, "station 1 polarizer angle (degrees)");
  epr->add_option("--theta2", epr_args.theta2, "station 2 polarizer angle (degrees)");
  epr->add_flag("--radians", epr_args.radians, "interpret angles as radians");
  epr->add_option("--estimator", epr_args.estimator, "amplitude | intensity | both")
      ->check(CLI::IsMember({"amplitude", "intensity", "both"}));
  auto* mode_opt = epr->add_option("--mode", epr_args.mode,
                                   "exact | sampled (sampled when --trials is given alone)")
                       ->check(CLI::IsMember({"exact", "sampled"}));
  auto* trials_opt = epr->add_option("--trials", epr_args.trials, "trials in sampled mode");
  epr->add_option("--seed", epr_args.seed, "base seed");
  epr->add_option("--chunks", epr_args.chunks, "independent RNG chunks per estimate")
      ->check(CLI::PositiveNumber);
  epr->add_flag("--chsh", epr_args.chsh, "evaluate the CHSH combination");
  epr->add_option("--angles", epr_args.angles, "a,a',b,b' for --chsh")->delimiter(',');
  epr->add_flag("--decompose", epr_args.decompose, "hidden-variable decomposition report");
  epr->add_option("--scan", epr_args.scan_step, "grid step over [0, 180) for both angles");
  epr->add_option("--format", epr_args.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  epr->add_option("--output,-o", epr_args.output, "output file (default stdout)");

  TwinArgs twin_args;
  auto* twin = app.add_subcommand("twin", "conventional and equal-aging twin charts");
  twin->add_option("--distance", twin_args.distance, "proper distance D to the pylon")->required();
  twin->add_option("--beta", twin_args.beta, "cruise speed fraction in (0, 1)")->required();
  twin->add_option("--chart", twin_args.chart, "write chart JSON to this file");
  twin->add_option("--resolution", twin_args.resolution, "points per chart curve");
  twin->add_option("--length-scale", twin_args.length_scale,
                   "multiply output lengths/times by this factor");
  twin->add_option("--format", twin_args.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  twin->add_option("--output,-o", twin_args.output, "output file (default stdout)");

  DynamicsArgs dyn_args;
  auto* dyn = app.add_subcommand("dynamics", "integrate retarded two-body dynamics");
  dyn->add_option("--config", dyn_args.config, "system configuration JSON")->required();
  dyn->add_option("--output,-o", dyn_args.output, "trajectory CSV (default stdout)");
  dyn->add_option("--summary", dyn_args.summary, "diagnostics summary JSON (default stderr)");
  dyn->add_flag("--include-history", dyn_args.include_history, "also emit the initial history");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*epr) {
      if (trials_opt->count() > 0 && mode_opt->count() == 0) epr_args.mode = "sampled";
      return run_epr(epr_args);
    }
    if (*twin) return run_twin(twin_args);
    if (*dyn) return run_dynamics(dyn_args);
  } catch (const UsageError& e) {
    std::cerr << "relab: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const relab::DomainError& e) {
    std::cerr << "relab: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const relab::io::ParseError& e) {
    std::cerr << "relab: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const relab::InsufficientHistoryError& e) {
    std::cerr << "relab: insufficient history: " << e.what() << '\n';
    return kInsufficientHistory;
  } catch (const std::exception& e) {
    std::cerr << "relab: error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
