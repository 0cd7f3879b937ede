// Command-line harness around the verification suites.
//
//   run --config <path> [--suite <name>]... [--seed N] [--report <path>] [--jobs N]
//   describe --input <path>
//
// Exit codes: 0 all requested suites passed, 1 at least one record failed,
// 2 configuration or input error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prodsys/prodsys.hpp"

namespace {

prodsys::Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw prodsys::ConfigError("cannot open " + path);
  prodsys::Json j;
  try {
    in >> j;
  } catch (const prodsys::Json::exception& e) {
    throw prodsys::ConfigError(std::string("parse error in ") + path + ": " + e.what());
  }
  return j;
}

int run_command(const std::string& config_path, const std::vector<std::string>& suites,
                bool seed_given, std::uint64_t seed, const std::string& report_path, int jobs) {
  prodsys::ScenarioConfig cfg = prodsys::scenario_config_from_json(load_json_file(config_path));
  if (!suites.empty()) {
    for (const auto& s : suites)
      if (!prodsys::is_suite_name(s))
        throw prodsys::ConfigError("unknown suite \"" + s + "\"");
    cfg.suites = suites;
  }
  if (seed_given) {
    cfg.seed = seed;
    cfg.has_seed = true;
  }

  std::ofstream report_file;
  if (!report_path.empty()) {
    report_file.open(report_path);
    if (!report_file) throw prodsys::ConfigError("cannot open report file " + report_path);
  }
  std::ostream& out = report_path.empty() ? std::cout : report_file;
  prodsys::ReportWriter writer(out);
  int status = prodsys::run_all_suites(cfg, writer, jobs);
  std::cerr << "suites: " << cfg.suites.size() << ", records: " << writer.cases()
            << ", failures: " << writer.failures() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dilation and semigroup verification harness"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run verification suites against a config");
  std::string config_path, report_path;
  std::vector<std::string> suites;
  std::uint64_t seed = 0;
  int jobs = 1;
  run->add_option("--config", config_path, "config file (JSON)")->required();
  run->add_option("--suite", suites, "suite to run (repeatable; overrides the config)");
  auto* seed_opt = run->add_option("--seed", seed, "override the run seed");
  run->add_option("--report", report_path, "write records to this file instead of stdout");
  run->add_option("--jobs", jobs, "evaluate cases on this many threads")
      ->check(CLI::Range(1, 256));

  auto* describe = app.add_subcommand("describe", "print a trace of a construction element");
  std::string input_path;
  describe->add_option("--input", input_path, "input file (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed())
      return run_command(config_path, suites, seed_opt->count() > 0, seed, report_path, jobs);
    std::cout << prodsys::describe_input(load_json_file(input_path)) << "\n";
    return 0;
  } catch (const prodsys::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
