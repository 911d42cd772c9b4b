// oqw: command-line front end for open quantum walk simulations.
//
//   oqw scenarios
//   oqw validate <config.json | ->
//   oqw run      <config.json | ->         [--output PATH] [--format csv|json]
//   oqw steady   <config.json | ->         [--output PATH]
//   oqw run --scenario line steps=100 theta_cos=0.8

#include "runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

std::string read_document(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw oqw::cli::ConfigError("cannot read configuration '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Invocation {
  std::string config_path;
  std::string scenario;
  std::vector<std::string> assignments;
  std::string output;
  std::string format;
};

void add_config_options(CLI::App* cmd, Invocation& inv) {
  cmd->add_option("config", inv.config_path, "JSON configuration file, or - for standard input");
  cmd->add_option("--scenario", inv.scenario, "Quick mode: scenario name");
  cmd->add_option("assignments", inv.assignments, "Quick mode: key=value parameters");
}

oqw::cli::RunConfig load(const Invocation& inv, double tol) {
  if (!inv.scenario.empty()) {
    auto assignments = inv.assignments;
    // In quick mode the first positional lands in `config`.
    if (!inv.config_path.empty()) assignments.insert(assignments.begin(), inv.config_path);
    return oqw::cli::parse_quick(inv.scenario, assignments, tol);
  }
  if (inv.config_path.empty()) throw oqw::cli::ConfigError("no configuration given");
  if (!inv.assignments.empty()) {
    throw oqw::cli::ConfigError("unexpected arguments after the configuration path");
  }
  return oqw::cli::parse_config(read_document(inv.config_path), tol);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open quantum walk simulator"};
  app.require_subcommand(1);

  Invocation inv;
  auto* scenarios = app.add_subcommand("scenarios", "List scenario builders and parameters");
  auto* validate = app.add_subcommand("validate", "Check the completeness relation for a walk");
  auto* run = app.add_subcommand("run", "Evolve and emit occupation trajectories");
  auto* steady = app.add_subcommand("steady", "Iterate to a steady state and emit a report");
  for (auto* cmd : {validate, run, steady}) {
    add_config_options(cmd, inv);
    cmd->add_option("-o,--output", inv.output, "Output path (overrides the configuration)");
  }
  run->add_option("-f,--format", inv.format, "csv or json (overrides the configuration)")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  using namespace oqw::cli;
  try {
    if (scenarios->parsed()) {
      std::cout << scenario_listing();
      return kOk;
    }
    RunConfig config = load(inv, default_tolerance());
    if (!inv.output.empty()) config.output = inv.output;
    if (!inv.format.empty()) config.format = inv.format == "json" ? Format::json : Format::csv;

    if (validate->parsed()) return execute_validate(config, std::cout);
    config.mode = steady->parsed() ? Mode::steady : Mode::run;
    return execute(config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
}
