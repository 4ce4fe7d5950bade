#include "mixnorm/calibration.hpp"
#include "mixnorm/errors.hpp"
#include "mixnorm/experiments.hpp"
#include "mixnorm/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace mixnorm;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kNonConvergence = 3 };

struct RunArgs {
  std::string id;
  std::optional<double> p, alpha, tol;
  std::string q;
  std::optional<std::uint64_t> seed;
  std::optional<long long> degree;
  std::string config;
  std::string out;
  std::string format = "json";
  std::vector<std::string> settings;
};

// Command-line values override the config file, which overrides the defaults.
Config build_config(const RunArgs& a) {
  Config cfg;
  if (!a.config.empty()) cfg = Config::from_file(a.config);
  Config cli;
  if (a.p) cli.set("p", format_double(*a.p));
  if (!a.q.empty()) cli.set("q", format_double(parse_double(a.q)));
  if (a.alpha) cli.set("alpha", format_double(*a.alpha));
  if (a.tol) cli.set("tol", format_double(*a.tol));
  if (a.seed) cli.set("seed", std::to_string(*a.seed));
  if (a.degree) cli.set("degree", std::to_string(*a.degree));
  for (const auto& s : a.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + s + "'");
    cli.set(s.substr(0, eq), s.substr(eq + 1));
  }
  cfg.merge(cli);
  return cfg;
}

void print_verdicts(const ExperimentReport& r) {
  for (const auto& [k, v] : r.verdicts) std::cout << k << ": " << v << '\n';
  std::cout << (r.passed() ? "PASS" : "FAIL") << ' ' << r.experiment_id << " (" << r.runtime_ms << " ms)\n";
}

int run(const RunArgs& a) {
  const auto report = run_experiment(a.id, build_config(a));
  const auto fmt = parse_format(a.format);
  if (a.out.empty()) {
    std::cout << (fmt == Format::JSON ? to_json_string(report) : to_csv(report) + summary_block(report)) << '\n';
  } else {
    emit(report, fmt, a.out);
    print_verdicts(report);
  }
  return report.passed() ? kPass : kFail;
}

int calibrate(const std::string& config, const std::string& out) {
  Config cfg;
  if (!config.empty()) cfg = Config::from_file(config);
  const auto fx = run_calibration(cfg);
  const auto path = fixtures_file(out);
  write_atomic(path, fixtures_to_json(fx));
  for (const auto& e : fx.entries) {
    std::cout << e.id << '\n';
    for (const auto& [k, v] : e.constants) std::cout << "  " << k << " = " << format_double(v) << '\n';
  }
  std::cout << "wrote " << path.string() << '\n';
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on mixed-norm spaces of analytic functions"};
  app.require_subcommand(1);

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "run one experiment");
  run_cmd->add_option("id", ra.id, "experiment id (see 'list')")->required();
  run_cmd->add_option("--p", ra.p, "integral-mean exponent p");
  run_cmd->add_option("--q", ra.q, "radial exponent q (inf allowed)");
  run_cmd->add_option("--alpha", ra.alpha, "weight exponent alpha");
  run_cmd->add_option("--tol", ra.tol, "experiment tolerance");
  run_cmd->add_option("--seed", ra.seed, "random seed");
  run_cmd->add_option("--degree", ra.degree, "series truncation degree");
  run_cmd->add_option("--config", ra.config, "key = value settings file")->check(CLI::ExistingFile);
  run_cmd->add_option("--set", ra.settings, "extra key=value setting (repeatable)");
  run_cmd->add_option("--out", ra.out, "output path; stdout when omitted");
  run_cmd->add_option("--format", ra.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* list_cmd = app.add_subcommand("list", "list experiments");

  std::string cal_out = "fixtures";
  std::string cal_config;
  auto* cal_cmd = app.add_subcommand("calibrate", "run the calibration oracle and write fixtures");
  cal_cmd->add_option("--out", cal_out, "fixture file or directory");
  cal_cmd->add_option("--config", cal_config, "key = value settings file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (*list_cmd) {
      for (const auto& e : experiment_catalog()) std::cout << e.id << "\t" << e.result << "\n    " << e.description << '\n';
      return kPass;
    }
    if (*cal_cmd) return calibrate(cal_config, cal_out);
    if (*run_cmd) return run(ra);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NonConvergenceError& e) {
    std::cerr << "nonconvergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
