/**
 * @file identity.hpp
 * @brief Generic "lhs == rhs on every basis tuple and exponent tuple" checker.
 *
 * Every axiom is expressed as an Identity so that the same object drives the
 * exhaustive check, the serial reference, and witness replay.
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vakit/graded.hpp"
#include "vakit/report.hpp"

namespace vakit {

using ExponentTuple = std::vector<std::int64_t>;

struct Sides {
  SparseVector lhs;
  SparseVector rhs;
};

struct Identity {
  std::string id;
  std::string anchor;
  std::vector<std::string> exponent_names;
  std::vector<ExponentTuple> exponents{ExponentTuple{}};
  std::vector<SpacePtr> slots;
  SpacePtr output;
  std::function<Sides(const ExponentTuple&, const std::vector<Index>&)> eval;

  std::size_t basis_count() const;
  std::size_t size() const { return basis_count() * exponents.size(); }
  /// Basis-major lexicographic order, then exponent tuple order.
  void decode(std::size_t flat, ExponentTuple& e, std::vector<Index>& b) const;
};

/// Runs with the configured worker count.
AxiomResult verify(const Identity& id);
/// Single-threaded reference path.
AxiomResult verify_serial(const Identity& id);

Witness make_witness(const Identity& id, const ExponentTuple& e, const std::vector<Index>& b,
                     const Sides& s);

/// Re-evaluates the identity at a witness' basis labels and exponents.
Sides replay(const Identity& id, const Witness& w);

/// Exponent tuples in the box [lo, hi]^k, lexicographic.
std::vector<ExponentTuple> exponent_box(std::int64_t lo, std::int64_t hi, std::size_t k);
/// Tuples of [lo-1, hi+1]^k that are not in [lo, hi]^k.
std::vector<ExponentTuple> exponent_shell(std::int64_t lo, std::int64_t hi, std::size_t k);
std::vector<ExponentTuple> exponent_range(std::int64_t lo, std::int64_t hi);

}  // namespace vakit
