/**
 * @file builders.hpp
 * @brief Example structures with elementary proofs of their axioms.
 */
#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "vakit/structure.hpp"
#include "vakit/vertex.hpp"

namespace vakit {

class BuilderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-dimensional unital algebra with a nilpotent derivation.
struct DifferentialAlgebraSpec {
  SpacePtr space;
  GroupElement gamma0;
  LinearMap product;  // space (x) space -> space
  SparseVector unit;
  LinearMap derivation;
};

/// Y_n(u (x) v) = D^{-n-1}(u) v / (-n-1)!, beta = One.
VertexAlgebraData from_differential_algebra(const DifferentialAlgebraSpec& spec);
/// Same formula with beta = Zero; commutativity not required.
VertexAlgebraData from_associative_with_derivation(const DifferentialAlgebraSpec& spec);

/// Q[e]/(e^k) with D(e) = e^2 (or D = 0), ungraded.
DifferentialAlgebraSpec truncated_polynomial(int k, bool zero_derivation = false);
/// Upper-triangular 2x2 matrices with D = [e12, .].
DifferentialAlgebraSpec upper_triangular();

/// Exterior algebra on n generators, Gamma = Z, beta(m,n) = (-1)^{mn}.
VertexAlgebraData exterior_example(int n);
/// V = k1 with Y_{-1} = id.
VertexAlgebraData trivial_algebra();

/// V^rank with Y^M extended copywise; D^M = D on every copy.
ModuleData free_module(const std::shared_ptr<const VertexAlgebraData>& a, int rank);
ModuleData adjoint_module(const std::shared_ptr<const VertexAlgebraData>& a);

/// Names accepted by make_example.
std::vector<std::string> example_names();
/// Throws BuilderError for an unknown name.
Structure make_example(const std::string& name);

}  // namespace vakit
