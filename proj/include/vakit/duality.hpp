/**
 * @file duality.hpp
 * @brief Restricted duals: algebra <-> coalgebra on V', module <-> comodule on M'.
 *
 * Pairing on tensors reverses slots: <f (x) g, u (x) v> = g(u) f(v).
 */
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "vakit/vertex.hpp"

namespace vakit {

/// Thrown when beta fails the parity relation on the support box.
class DualityRefusal : public std::runtime_error {
 public:
  explicit DualityRefusal(AxiomResult r)
      : std::runtime_error("dualization refused: " + r.detail), result_(std::move(r)) {}
  const AxiomResult& result() const { return result_; }

 private:
  AxiomResult result_;
};

struct DualityWitness {
  std::string source_id;
  std::string target_id;
  SpacePtr source;
  SpacePtr dual;
  /// Per degree g of the source: rows are dual basis vectors in degree -g, columns source basis vectors.
  std::map<GroupElement, Matrix> pairing;

  nlohmann::json to_json() const;
};

/// f : A (x) B -> C  gives  C' -> B' (x) A'.
LinearMap transpose_bilinear(const LinearMap& f, Index dA, Index dB);
/// f : C -> B (x) A  gives  A' (x) B' -> C'.
LinearMap transpose_cobilinear(const LinearMap& f, Index dA, Index dB);

/// Parity of beta on the support box of the given spaces; Pass or Refused.
AxiomResult parity_precondition(const BetaSpec& beta, const GroupElement& gamma0,
                                const std::vector<const GradedSpace*>& spaces);

std::pair<VertexCoalgebraData, DualityWitness> dualize_algebra(const VertexAlgebraData& a,
                                                               const std::string& source_id = "V");
std::pair<VertexAlgebraData, DualityWitness> dualize_coalgebra(const VertexCoalgebraData& c,
                                                               const std::string& source_id = "V");
std::pair<ComoduleData, DualityWitness> dualize_module(const ModuleData& m, const std::string& source_id = "M");
std::pair<ModuleData, DualityWitness> dualize_comodule(const ComoduleData& m, const std::string& source_id = "M");

/// V -> (V')' as per-degree matrices in the dual-dual basis.
GradedMap double_dual_identify(const SpacePtr& v);

/// Replaces the (V')' space of a double dual by the original V, checking labels and degrees.
VertexAlgebraData relabel_double_dual(const VertexAlgebraData& dd, const SpacePtr& original);
VertexCoalgebraData relabel_double_dual(const VertexCoalgebraData& dd, const SpacePtr& original);

bool same_structure(const VertexAlgebraData& a, const VertexAlgebraData& b);
bool same_structure(const VertexCoalgebraData& a, const VertexCoalgebraData& b);

}  // namespace vakit
