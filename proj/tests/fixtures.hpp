// Shared fixtures and planted defects for the tests, the acceptance binary and the benchmark.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "vakit/builders.hpp"
#include "vakit/c2.hpp"
#include "vakit/commands.hpp"
#include "vakit/structure_file.hpp"

namespace fixtures {

using namespace vakit;

/// Fixture names grouped by kind.
std::vector<std::string> algebra_names();
std::vector<std::string> module_names();

/// Algebras that satisfy every axiom (zero-beta excluded).
std::vector<std::string> sound_algebra_names();
std::vector<std::string> sound_module_names();

/// Canonical text of an example with one line of one section replaced.
std::string edit(const std::string& text, const std::string& section, const std::string& from,
                 const std::string& to);
/// Appends a line to a section.
std::string append(const std::string& text, const std::string& section, const std::string& line);

Structure parse(const std::string& text);

/// A Poisson algebra over the trivial group with beta = one, from tables
/// "a b" -> vector text.
PoissonAlgebraData poisson(const std::vector<std::string>& labels,
                           const std::vector<std::pair<std::string, std::string>>& product,
                           const std::vector<std::pair<std::string, std::string>>& bracket,
                           const std::string& unit);
PoissonModuleData poisson_module(std::shared_ptr<const PoissonAlgebraData> base, const std::vector<std::string>& labels,
                                 const std::vector<std::pair<std::string, std::string>>& action,
                                 const std::vector<std::pair<std::string, std::string>>& lie_action);

/// Transposes: product -> coproduct and so on, on the same labels.
CoPoissonCoalgebraData transpose(const PoissonAlgebraData& p);
CoPoissonComoduleData transpose(std::shared_ptr<const CoPoissonCoalgebraData> base, const PoissonModuleData& m);

/// A structure or Poisson datum with one clause broken.
struct PlantedDefect {
  std::string name;
  std::string clause;  // axiom id that must fail
  std::function<CheckReport()> check;
  /// Identities that replay the witness; they refer to data owned by this object.
  std::function<std::vector<Identity>()> identities;
};

std::vector<PlantedDefect> planted_defects();

/// The small Poisson algebra used by the Poisson-level tests: carrier {one, x, y},
/// x x = y, bracket zero.
PoissonAlgebraData small_poisson();

}  // namespace fixtures
