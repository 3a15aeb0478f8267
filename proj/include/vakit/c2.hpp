/**
 * @file c2.hpp
 * @brief C2-algebras R(V) = V / Im Y_{-2}, C2-coalgebras Ker Y_{-2}, their
 *        (co)module versions, Poisson checkers and the duality isomorphisms.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vakit/duality.hpp"
#include "vakit/vertex.hpp"

namespace vakit {

/// Raised when an induced structure is not well defined; carries the failing check.
class C2Error : public std::runtime_error {
 public:
  explicit C2Error(AxiomResult r) : std::runtime_error("c2: " + r.id + " failed"), result_(std::move(r)) {}
  const AxiomResult& result() const { return result_; }

 private:
  AxiomResult result_;
};

struct PoissonAlgebraData {
  SpacePtr carrier;
  LinearMap product;  // carrier (x) carrier -> carrier
  LinearMap bracket;
  SparseVector unit;
  BetaSpec beta;
  GroupElement gamma0;
};

struct PoissonModuleData {
  std::shared_ptr<const PoissonAlgebraData> base;
  SpacePtr carrier;
  LinearMap action;      // base (x) carrier -> carrier
  LinearMap lie_action;
};

struct CoPoissonCoalgebraData {
  SpacePtr carrier;
  LinearMap coproduct;  // carrier -> carrier (x) carrier
  LinearMap cobracket;
  SparseVector counit;  // values on the carrier basis
  BetaSpec beta;
  GroupElement gamma0;
};

struct CoPoissonComoduleData {
  std::shared_ptr<const CoPoissonCoalgebraData> base;
  SpacePtr carrier;
  LinearMap coaction;  // carrier -> carrier (x) base
  LinearMap lie_coaction;
};

struct C2Algebra {
  Quotient quotient;
  PoissonAlgebraData poisson;
  CheckReport well_defined;
};

struct C2Module {
  Quotient quotient;
  PoissonModuleData poisson;
  CheckReport well_defined;
};

struct CoC2Coalgebra {
  GradedSubspace kernel;
  CoPoissonCoalgebraData copoisson;
  CheckReport containment;
};

struct CoC2Comodule {
  GradedSubspace kernel;
  CoPoissonComoduleData copoisson;
  CheckReport containment;
};

GradedSubspace c2_subspace(const VertexAlgebraData& a);
GradedSubspace c2_subspace_module(const ModuleData& m);
GradedSubspace co_c2_subspace(const VertexCoalgebraData& c);
GradedSubspace co_c2_subspace_comodule(const ComoduleData& m);

CheckReport lemma_higher_modes(const VertexAlgebraData& a);
CheckReport lemma_higher_modes(const VertexCoalgebraData& c);
CheckReport lemma_higher_modes(const ModuleData& m);
CheckReport lemma_higher_modes(const ComoduleData& m);

/// Throws C2Error when Y_{-1} or Y_0 does not preserve C2.
C2Algebra c2_algebra(const VertexAlgebraData& a);
C2Module c2_module(const C2Algebra& base, const ModuleData& m);
/// Throws C2Error when the coproducts leave the kernel.
CoC2Coalgebra co_c2_coalgebra(const VertexCoalgebraData& c);
CoC2Comodule co_c2_comodule(const CoC2Coalgebra& base, const ComoduleData& m);

/// The lift plus a random C2 correction of the same degree, deterministic in seed.
LinearMap random_section(const Quotient& q, std::uint64_t seed);
/// Product, bracket and unit induced through an arbitrary section.
PoissonAlgebraData induce_algebra(const VertexAlgebraData& a, const Quotient& q, const LinearMap& section);

// ---- checkers on any carrier

CheckReport check_gamma_algebra(const PoissonAlgebraData& p);
CheckReport check_beta_commutative(const PoissonAlgebraData& p);
CheckReport check_lie(const SpacePtr& carrier, const LinearMap& bracket, const BetaSpec& beta);
/// Refuses when beta fails the multiplicative relation on the carrier support.
CheckReport check_poisson(const PoissonAlgebraData& p);
CheckReport check_poisson_module(const PoissonModuleData& m);

CheckReport check_gamma_coalgebra(const CoPoissonCoalgebraData& c);
CheckReport check_beta_cocommutative(const CoPoissonCoalgebraData& c);
CheckReport check_colie(const SpacePtr& carrier, const LinearMap& cobracket, const BetaSpec& beta);
CheckReport check_copoisson(const CoPoissonCoalgebraData& c);
CheckReport check_copoisson_comodule(const CoPoissonComoduleData& m);

/// The identities behind the checkers above, for witness replay. They refer
/// to the data, which must outlive them.
std::vector<Identity> poisson_identities(const PoissonAlgebraData& p);
std::vector<Identity> poisson_module_identities(const PoissonModuleData& m);
std::vector<Identity> copoisson_identities(const CoPoissonCoalgebraData& c);
std::vector<Identity> copoisson_comodule_identities(const CoPoissonComoduleData& m);

// ---- duality isomorphisms

struct IsoResult {
  GradedMap map;
  CheckReport report;
};

/// R(V) -> Ker(Y'_{-2})' for the dual coalgebra V'.
IsoResult poisson_duality_iso(const VertexAlgebraData& a);
/// Ker(Y_{-2}) -> R(V')' for the dual algebra V'.
IsoResult copoisson_duality_iso(const VertexCoalgebraData& c);
IsoResult poisson_duality_iso_module(const ModuleData& m);
IsoResult copoisson_duality_iso_comodule(const ComoduleData& m);

/// f (x) g on A (x) B with f : A -> A2, g : B -> B2.
LinearMap kron(const LinearMap& f, const LinearMap& g);

}  // namespace vakit
