// vakit: command-line front end.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "vakit/commands.hpp"
#include "vakit/parallel.hpp"
#include "vakit/structure_file.hpp"

using namespace vakit;

namespace {

int emit_error(const nlohmann::json& j, const std::string& message) {
  std::cout << render_json(j);
  std::cerr << "vakit: " << message << "\n";
  return kExitInputError;
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checker for vertex algebras, coalgebras and their (co)modules"};
  app.require_subcommand(1);
  app.fallthrough();

  int workers = 0;
  bool no_timing = false;
  app.add_option("--workers", workers, "OpenMP workers for the checkers (0 keeps the default)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--no-timing", no_timing, "Omit timing fields from the report");

  std::string file;
  std::string out_path;

  auto* check = app.add_subcommand("check", "Run an axiom suite on a structure file");
  std::string suite = "all";
  std::optional<std::int64_t> box;
  std::string replay_path;
  check->add_option("file", file, "Structure file")->required();
  check->add_option("--suite", suite, "Suite to run")
      ->check(CLI::IsMember({"algebra", "coalgebra", "module", "comodule", "beta", "all"}));
  check->add_option("--box", box, "Exponent box [-L, L] for the Jacobi-type identities")
      ->check(CLI::NonNegativeNumber);
  check->add_option("--replay", replay_path, "Re-evaluate one counterexample from a report or witness file");

  auto* dualize = app.add_subcommand("dualize", "Write the restricted dual of a structure");
  dualize->add_option("file", file, "Structure file")->required();
  dualize->add_option("-o,--output", out_path, "Output structure file")->required();

  auto* c2 = app.add_subcommand("c2", "Build the C2 quotient or C2 kernel and check it");
  bool poisson = false;
  c2->add_option("file", file, "Structure file")->required();
  c2->add_flag("--poisson", poisson, "Also check the (co)Poisson axioms");
  c2->add_option("-o,--output", out_path, "Output JSON file")->required();

  auto* iso = app.add_subcommand("iso-check", "Build and verify a duality isomorphism");
  std::string theorem;
  iso->add_option("file", file, "Structure file")->required();
  iso->add_option("--theorem", theorem, "7.5|7.6|7.10|7.12 or poisson|copoisson|poisson-module|copoisson-comodule")
      ->required()
      ->check(CLI::IsMember(
          {"7.5", "7.6", "7.10", "7.12", "poisson", "copoisson", "poisson-module", "copoisson-comodule"}));

  auto* example = app.add_subcommand("example", "Write a built-in example structure");
  std::string name;
  example->add_option("name", name, "Example name")->required();
  example->add_option("-o,--output", out_path, "Output structure file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInputError;
  }

  std::optional<ScopedWorkers> scoped;
  if (workers > 0) scoped.emplace(workers);

  try {
    CheckReport rep;
    std::vector<std::string> warnings;
    auto load = [&]() {
      ParseResult p = load_structure(file);
      warnings = p.warnings;
      return p.structure;
    };
    if (check->parsed()) {
      Structure s = load();
      if (!replay_path.empty()) {
        rep = run_replay(s, read_json(replay_path));
      } else {
        CheckOptions opt;
        if (box) opt.box_radius = *box;
        rep = run_check(s, *suite_from_name(suite), opt);
      }
    } else if (dualize->parsed()) {
      rep = run_dualize(load(), out_path);
    } else if (c2->parsed()) {
      rep = run_c2(load(), poisson, out_path);
    } else if (iso->parsed()) {
      rep = run_iso_check(load(), *iso_theorem_from_name(theorem));
    } else if (example->parsed()) {
      rep = run_example(name, out_path);
    }
    for (const auto& w : warnings) std::cerr << "vakit: warning: " << w << "\n";
    add_input_warnings(rep, warnings);
    std::cout << render_json(rep.to_json(!no_timing));
    return rep.exit_code();
  } catch (const ParseError& e) {
    nlohmann::json j = error_json("parse", e.message());
    j["error"]["line"] = e.line();
    j["error"]["column"] = e.column();
    if (!e.expected().empty()) j["error"]["expected"] = e.expected();
    return emit_error(j, e.what());
  } catch (const IoError& e) {
    return emit_error(error_json("io", e.what()), e.what());
  } catch (const UsageError& e) {
    return emit_error(error_json("usage", e.what()), e.what());
  } catch (const std::exception& e) {
    return emit_error(error_json("input", e.what()), e.what());
  }
}
