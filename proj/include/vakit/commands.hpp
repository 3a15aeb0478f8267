/**
 * @file commands.hpp
 * @brief The command layer behind the vakit executable.
 *
 * Each command returns a CheckReport; the caller prints it and exits with
 * CheckReport::exit_code(). Input and usage problems raise UsageError,
 * ParseError or IoError, all mapped to exit code 3.
 */
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vakit/structure.hpp"

namespace vakit {

inline constexpr int kExitInputError = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Suite { Algebra, Coalgebra, Module, Comodule, Beta, All };

std::optional<Suite> suite_from_name(const std::string& s);
std::string suite_name(Suite s);

enum class IsoTheorem { Poisson, CoPoisson, PoissonModule, CoPoissonComodule };

/// Accepts "7.5", "7.6", "7.10", "7.12" and the names "poisson", "copoisson",
/// "poisson-module", "copoisson-comodule".
std::optional<IsoTheorem> iso_theorem_from_name(const std::string& s);
std::string iso_theorem_name(IsoTheorem t);
StructureKind iso_theorem_kind(IsoTheorem t);

CheckReport run_check(const Structure& s, Suite suite, const CheckOptions& opt = {});
/// Writes the dual to out_path and the pairing to out_path + ".pairing.json".
CheckReport run_dualize(const Structure& s, const std::string& out_path);
/// Writes the induced (co)Poisson structure as JSON to out_path.
CheckReport run_c2(const Structure& s, bool poisson, const std::string& out_path);
CheckReport run_iso_check(const Structure& s, IsoTheorem t);
CheckReport run_example(const std::string& name, const std::string& out_path);

/// Every replayable identity for the structure's kind.
std::vector<Identity> identities_for(const Structure& s, const CheckOptions& opt = {});
/// Re-evaluates one counterexample. The JSON is either a report (its first
/// witnessed failure is used) or an object with "id" and "witness".
CheckReport run_replay(const Structure& s, const nlohmann::json& input);

/// Report for warnings produced while reading the input.
void add_input_warnings(CheckReport& rep, const std::vector<std::string>& warnings);

nlohmann::json error_json(const std::string& kind, const std::string& message);
/// Pretty JSON with a trailing newline.
std::string render_json(const nlohmann::json& j);

}  // namespace vakit
