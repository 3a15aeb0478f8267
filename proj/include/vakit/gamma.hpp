/**
 * @file gamma.hpp
 * @brief Finitely generated abelian groups, the maps beta and their relation checks.
 */
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vakit/report.hpp"
#include "vakit/scalar.hpp"

namespace vakit {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gamma = Z^free_rank x Z/m_1 x ... x Z/m_s.
struct GroupSpec {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;

  std::size_t rank() const { return static_cast<std::size_t>(free_rank) + torsion.size(); }
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

class GroupElement {
 public:
  GroupElement() = default;
  /// Torsion coordinates are reduced into [0, m_i).
  GroupElement(const GroupSpec& spec, std::vector<std::int64_t> coords);
  static GroupElement zero(const GroupSpec& spec);

  const std::vector<std::int64_t>& coords() const { return coords_; }
  const std::vector<std::int64_t>& moduli() const { return moduli_; }
  bool is_zero() const;

  GroupElement operator+(const GroupElement& o) const;
  GroupElement operator-(const GroupElement& o) const;
  GroupElement operator-() const;
  GroupElement scaled(std::int64_t k) const;

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.coords_ == b.coords_ && a.moduli_ == b.moduli_;
  }
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    return a.coords_ < b.coords_;
  }

  /// "(1,0)"; the trivial group prints "()".
  std::string str() const;

 private:
  void check(const GroupElement& o) const;
  std::vector<std::int64_t> coords_;
  std::vector<std::int64_t> moduli_;  // 0 for free coordinates
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// A set map Gamma x Gamma -> k given by a closed-form family or a finite table.
class BetaSpec {
 public:
  enum class Kind { One, Zero, SignBilinear, QBilinear, Table, Product };

  static BetaSpec one();
  static BetaSpec zero();
  static BetaSpec sign_bilinear(IntMatrix form);
  static BetaSpec q_bilinear(Scalar q, IntMatrix form);
  static BetaSpec table(std::map<std::pair<GroupElement, GroupElement>, Scalar> entries);
  static BetaSpec product(std::vector<BetaSpec> factors);

  Kind kind() const { return kind_; }
  const IntMatrix& form() const { return form_; }
  const Scalar& q() const { return q_; }
  const std::map<std::pair<GroupElement, GroupElement>, Scalar>& entries() const { return table_; }
  const std::vector<BetaSpec>& factors() const { return factors_; }

  /// Throws GroupError on a table miss.
  Scalar operator()(const GroupElement& a, const GroupElement& b) const;

  std::string describe() const;
  friend bool operator==(const BetaSpec&, const BetaSpec&);

 private:
  std::int64_t pairing(const GroupElement& a, const GroupElement& b) const;
  Kind kind_ = Kind::One;
  IntMatrix form_;
  Scalar q_;
  std::map<std::pair<GroupElement, GroupElement>, Scalar> table_;
  std::vector<BetaSpec> factors_;
};

/// Memoized beta values on a fixed set of degrees; falls back to direct evaluation.
class BetaTable {
 public:
  BetaTable() = default;
  BetaTable(const BetaSpec& beta, const std::vector<GroupElement>& degrees);
  Scalar operator()(const GroupElement& a, const GroupElement& b) const;
  const BetaSpec& spec() const { return beta_; }

 private:
  BetaSpec beta_;
  std::map<std::pair<GroupElement, GroupElement>, Scalar> cache_;
};

enum class RelationKind { Parity, Multiplicative, Cocycle, UnitRight, InverseSym, Shift2Gamma0, Unit2Gamma0Left };

const std::vector<RelationKind>& all_relations();
std::string relation_id(RelationKind r);

/// All elements of the box [-L, L] on free coordinates and all residues on torsion coordinates.
std::vector<GroupElement> group_box(const GroupSpec& spec, std::int64_t radius);
/// Box given per free coordinate as [lo, hi].
std::vector<GroupElement> group_box(const GroupSpec& spec,
                                    const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges);

AxiomResult check_beta_relation(const BetaSpec& beta, RelationKind relation,
                                const std::vector<GroupElement>& domain, const GroupElement& gamma0);

CheckReport check_beta_relations(const BetaSpec& beta, const std::vector<GroupElement>& domain,
                                 const GroupElement& gamma0);

class GradedSpace;

/// Compares the two ways of moving U (x) V (x) W to W (x) V (x) U.
CheckReport check_cactus(const BetaSpec& beta, const GradedSpace& u, const GradedSpace& v,
                         const GradedSpace& w);

}  // namespace vakit
