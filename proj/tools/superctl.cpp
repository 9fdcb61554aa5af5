#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "superctl/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Rank conditions and simulation for linear control systems on Lie supergroups"};
  app.require_subcommand(1);

  std::string path, schedule, csv, name, entry, system, out_path;
  std::optional<std::string> only;

  auto* check = app.add_subcommand("check", "Decide controllability of a spec file");
  check->add_option("file", path, "Spec file (JSON)")->required();

  auto* table = app.add_subcommand("bracket-table", "Print the nonzero brackets of an algebra");
  table->add_option("algebra", name, "Catalog name or spec file")->required();

  auto* sim = app.add_subcommand("simulate", "Integrate a control schedule and write a CSV trajectory");
  sim->add_option("file", path, "Spec file (JSON)")->required();
  sim->add_option("schedule", schedule, "Schedule file (JSON)")->required();
  sim->add_option("out", csv, "Output CSV")->required();

  auto* verify = app.add_subcommand("verify-catalog", "Cross-check the built-in catalog");
  verify->add_option("--only", only, "Restrict to one entry");

  auto* exp = app.add_subcommand("export", "Write a catalog system as a spec file");
  exp->add_option("entry", entry, "Catalog entry, e.g. sl(2|1)")->required();
  exp->add_option("system", system, "System name, e.g. example2")->required();
  exp->add_option("-o,--output", out_path, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*check) return superctl::cmd_check(path, std::cout, std::cerr);
  if (*table) return superctl::cmd_bracket_table(name, std::cout, std::cerr);
  if (*sim) return superctl::cmd_simulate(path, schedule, csv, std::cout, std::cerr);
  if (*verify) return superctl::cmd_verify_catalog(only, std::cout, std::cerr);
  return superctl::cmd_export(entry, system, out_path, std::cout, std::cerr);
}
