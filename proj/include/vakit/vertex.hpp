/**
 * @file vertex.hpp
 * @brief Vertex algebras, coalgebras, modules and comodules as windowed
 *        structure constants, with their axiom checkers.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vakit/gamma.hpp"
#include "vakit/graded.hpp"
#include "vakit/identity.hpp"
#include "vakit/report.hpp"

namespace vakit {

/// Operators with index outside [lo, hi] vanish.
struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  bool empty() const { return lo > hi; }
  bool contains(std::int64_t n) const { return n >= lo && n <= hi; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// n -> Y_n; absent keys are zero maps.
using OpFamily = std::map<std::int64_t, LinearMap>;

/// Y_n : V (x) V -> V, stored on the basis of V (x) V.
struct VertexAlgebraData {
  SpacePtr space;
  GroupElement gamma0;
  BetaSpec beta;
  Window window;
  OpFamily ops;
  SparseVector vacuum;

  const LinearMap* op(std::int64_t n) const;
};

/// Y_n : V -> V (x) V and the covacuum functional, stored as its values on the basis.
struct VertexCoalgebraData {
  SpacePtr space;
  GroupElement gamma0;
  BetaSpec beta;
  Window window;
  OpFamily coops;
  SparseVector covacuum;

  const LinearMap* coop(std::int64_t n) const;
};

/// Y^M_n : V (x) M -> M.
struct ModuleData {
  std::shared_ptr<const VertexAlgebraData> algebra;
  SpacePtr mspace;
  Window window;
  OpFamily mops;
  std::optional<LinearMap> d_m;
  std::optional<SparseVector> omega;

  const LinearMap* op(std::int64_t n) const;
};

/// Y^M_n : M -> M (x) V.
struct ComoduleData {
  std::shared_ptr<const VertexCoalgebraData> coalgebra;
  SpacePtr mspace;
  Window window;
  OpFamily comops;
  std::optional<LinearMap> cod_m;
  std::optional<SparseVector> rho;  // functional on V, by values on the basis

  const LinearMap* coop(std::int64_t n) const;
};

using LaurentVector = std::map<std::int64_t, SparseVector>;

/// n -> Y_n(u (x) v) for the nonzero components.
LaurentVector apply(const VertexAlgebraData& a, const SparseVector& u, const SparseVector& v);
LaurentVector apply(const VertexCoalgebraData& c, const SparseVector& u);

/// D(v) = Y_{-2}(v (x) 1).
LinearMap derive_D(const VertexAlgebraData& a);
/// D = (covacuum (x) id) Y_{-2}.
LinearMap derive_coD(const VertexCoalgebraData& c);

/// Exponent-box options for the Jacobi-type identities.
struct CheckOptions {
  /// Use [-r, r]^3 instead of the window-derived default box.
  std::optional<std::int64_t> box_radius;
  /// Also verify the identity on the shell just outside the box.
  bool shell = true;
};

/// Default box [lo - 2, hi + 2] for a window.
std::pair<std::int64_t, std::int64_t> default_box(const Window& w);

// ---- identities (used for checking and for witness replay)

std::vector<Identity> algebra_identities(const VertexAlgebraData& a, const CheckOptions& opt = {});
std::vector<Identity> coalgebra_identities(const VertexCoalgebraData& c, const CheckOptions& opt = {});
std::vector<Identity> module_identities(const ModuleData& m, const CheckOptions& opt = {});
std::vector<Identity> comodule_identities(const ComoduleData& m, const CheckOptions& opt = {});

// ---- algebra checks

CheckReport check_vacuum(const VertexAlgebraData& a);
CheckReport check_creation(const VertexAlgebraData& a);
CheckReport check_truncation(const VertexAlgebraData& a);
CheckReport check_jacobi(const VertexAlgebraData& a, std::int64_t lo, std::int64_t hi);
CheckReport check_derivation(const VertexAlgebraData& a);
/// The complete definition suite.
CheckReport check_algebra(const VertexAlgebraData& a, const CheckOptions& opt = {});
CheckReport check_skew_symmetry(const VertexAlgebraData& a);
CheckReport check_translation_consequences(const VertexAlgebraData& a);

// ---- coalgebra checks

CheckReport check_coalgebra(const VertexCoalgebraData& c, const CheckOptions& opt = {});
CheckReport check_cotranslation_consequences(const VertexCoalgebraData& c);

// ---- module / comodule checks

CheckReport check_module(const ModuleData& m, const CheckOptions& opt = {});
CheckReport check_module_translation(const ModuleData& m, const SparseVector& omega);
CheckReport check_comodule(const ComoduleData& m, const CheckOptions& opt = {});
CheckReport check_comodule_cotranslation(const ComoduleData& m, const SparseVector& rho);

// ---- binomial lemma and the beta = 0 associativity forms

CheckReport binom_delta_identity(std::int64_t m_lo, std::int64_t m_hi, std::int64_t k_lo, std::int64_t k_hi);
/// Requires beta of kind Zero; throws std::invalid_argument otherwise.
CheckReport check_beta0_associativity_equivalence(const VertexAlgebraData& a, std::int64_t lo, std::int64_t hi);

/// Degree box used for beta hypotheses: supports summed pairwise, plus negatives.
std::vector<GroupElement> support_box(const std::vector<const GradedSpace*>& spaces);

}  // namespace vakit
