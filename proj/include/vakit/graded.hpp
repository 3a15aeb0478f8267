/**
 * @file graded.hpp
 * @brief Compact Gamma-graded linear algebra over Q(zeta_N).
 */
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vakit/gamma.hpp"
#include "vakit/scalar.hpp"

namespace vakit {

using Index = std::size_t;

class SparseVector {
 public:
  SparseVector() = default;
  static SparseVector basis(Index i, const Scalar& c = Scalar(1));

  void add(Index i, const Scalar& c);
  void add_scaled(const SparseVector& v, const Scalar& c);
  void set(Index i, const Scalar& c);
  SparseVector scaled(const Scalar& c) const;
  Scalar get(Index i) const;
  bool is_zero() const { return m_.empty(); }
  std::size_t nnz() const { return m_.size(); }
  /// Largest index with a nonzero entry.
  Index last_index() const { return m_.rbegin()->first; }

  auto begin() const { return m_.begin(); }
  auto end() const { return m_.end(); }

  SparseVector& operator+=(const SparseVector& o);
  SparseVector& operator-=(const SparseVector& o);
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend bool operator==(const SparseVector& a, const SparseVector& b) { return a.m_ == b.m_; }

 private:
  std::map<Index, Scalar> m_;
};

struct BasisElement {
  std::string label;
  GroupElement degree;
};

/// Finite basis, each element homogeneous of some degree.
class GradedSpace {
 public:
  GradedSpace() = default;
  GradedSpace(GroupSpec spec, std::vector<BasisElement> basis);

  const GroupSpec& spec() const { return spec_; }
  Index dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  const std::string& label(Index i) const { return basis_.at(i).label; }
  const GroupElement& degree(Index i) const { return basis_.at(i).degree; }
  std::optional<Index> find(const std::string& label) const;
  Index index_of(const std::string& label) const;

  /// Sorted distinct degrees with nonzero component.
  std::vector<GroupElement> support() const;
  std::vector<Index> component(const GroupElement& g) const;
  Index dim_at(const GroupElement& g) const { return component(g).size(); }

  /// Parts of v grouped by degree.
  std::map<GroupElement, SparseVector> split(const SparseVector& v) const;
  std::string render(const SparseVector& v) const;

  friend bool operator==(const GradedSpace& a, const GradedSpace& b);

 private:
  GroupSpec spec_;
  std::vector<BasisElement> basis_;
  std::map<std::string, Index> by_label_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

template <class... Args>
SpacePtr make_space(Args&&... args) {
  return std::make_shared<const GradedSpace>(std::forward<Args>(args)...);
}

/// Labels "a|b"; index of (i, j) is i * dim(W) + j.
GradedSpace tensor(const GradedSpace& v, const GradedSpace& w);
/// Dual basis labelled "a'" in degree -|a|, same index order.
GradedSpace restricted_dual(const GradedSpace& v);
/// One-dimensional space k_gamma with basis label "1".
GradedSpace ground_field(const GroupSpec& spec, const GroupElement* degree = nullptr);
/// V' (x) W, the compact internal hom.
GradedSpace internal_hom(const GradedSpace& v, const GradedSpace& w);

std::string render_coefficient(const Scalar& c);

/// Column j is the image of basis vector j.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(Index source_dim, Index target_dim);
  static LinearMap identity(Index n);

  Index source_dim() const { return cols_.size(); }
  Index target_dim() const { return target_dim_; }
  const SparseVector& column(Index j) const { return cols_.at(j); }
  void set_column(Index j, SparseVector v);
  void add_entry(Index row, Index col, const Scalar& c);
  Scalar entry(Index row, Index col) const { return cols_.at(col).get(row); }
  SparseVector apply(const SparseVector& x) const;
  bool is_zero() const;
  std::size_t nnz() const;
  LinearMap transpose() const;

  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.target_dim_ == b.target_dim_ && a.cols_ == b.cols_;
  }

 private:
  Index target_dim_ = 0;
  std::vector<SparseVector> cols_;
};

/// g o f
LinearMap compose(const LinearMap& g, const LinearMap& f);
LinearMap scaled(const LinearMap& f, const Scalar& c);
LinearMap operator+(const LinearMap& a, const LinearMap& b);

/// Dense matrix used for per-degree blocks.
struct Matrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<Scalar> a;
  Matrix() = default;
  Matrix(Index r, Index c) : rows(r), cols(c), a(r * c) {}
  Scalar& at(Index r, Index c) { return a[r * cols + c]; }
  const Scalar& at(Index r, Index c) const { return a[r * cols + c]; }
  friend bool operator==(const Matrix&, const Matrix&) = default;
  bool is_identity() const;
};

struct GradedMap {
  SpacePtr source;
  SpacePtr target;
  GroupElement degree;
  LinearMap map;

  /// Block from source degree g to target degree g + degree.
  std::map<GroupElement, Matrix> blocks() const;
  /// First basis column with a component outside the expected degree.
  std::optional<Index> inhomogeneous_column() const;
};

/// x in A (x) B with right factor dimension right_dim; applies f on the left factor.
SparseVector apply_left(const LinearMap& f, const SparseVector& x, Index right_dim);
/// Applies g on the right factor (source dimension right_dim).
SparseVector apply_right(const LinearMap& g, const SparseVector& x, Index right_dim);
SparseVector tensor_vectors(const SparseVector& a, const SparseVector& b, Index dim_b);
/// beta-twisted swap A (x) B -> B (x) A.
SparseVector swap_beta(const SparseVector& x, const GradedSpace& a, const GradedSpace& b,
                       const BetaTable& beta);

GradedMap t_beta(const SpacePtr& v, const SpacePtr& w, const BetaSpec& beta);
/// (id (x) T) o (T (x) id) on V^(x)3.
GradedMap xi_beta(const SpacePtr& v, const BetaSpec& beta);

/// Reduced echelon basis; the pivot of a vector is its last nonzero coordinate.
class EchelonBasis {
 public:
  /// Returns false when v is already in the span.
  bool insert(SparseVector v);
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).is_zero(); }
  Index dim() const { return rows_.size(); }
  /// Basis vectors ordered by pivot.
  std::vector<SparseVector> vectors() const;
  std::vector<Index> pivots() const;
  const std::map<Index, SparseVector>& rows() const { return rows_; }
  friend bool operator==(const EchelonBasis& a, const EchelonBasis& b) { return a.rows_ == b.rows_; }

 private:
  std::map<Index, SparseVector> rows_;
};

/// Basis of { x : sum_j x_j columns[j] = 0 } in reduced echelon form.
std::vector<SparseVector> nullspace(const std::vector<SparseVector>& columns);

class GradedSubspace {
 public:
  GradedSubspace() = default;
  explicit GradedSubspace(SpacePtr ambient) : ambient_(std::move(ambient)) {}
  /// Span of the homogeneous parts of the given vectors.
  static GradedSubspace span(SpacePtr ambient, const std::vector<SparseVector>& vectors);
  static GradedSubspace whole(SpacePtr ambient);

  const SpacePtr& ambient() const { return ambient_; }
  Index dim() const;
  Index dim_at(const GroupElement& g) const;
  const std::map<GroupElement, EchelonBasis>& components() const { return comps_; }
  /// Basis ordered by degree, then pivot.
  std::vector<SparseVector> basis() const;
  std::vector<GroupElement> basis_degrees() const;
  std::vector<Index> pivots() const;
  bool contains(const SparseVector& v) const;
  SparseVector reduce(const SparseVector& v) const;
  /// Coordinates of v in basis(), assuming v lies in the subspace.
  SparseVector coordinates(const SparseVector& v) const;
  /// The subspace as a graded space, labels "{pivot label}".
  GradedSpace as_space() const;

  friend bool operator==(const GradedSubspace& a, const GradedSubspace& b);

 private:
  SpacePtr ambient_;
  std::map<GroupElement, EchelonBasis> comps_;
};

GradedSubspace image(const GradedMap& f);
/// Direct sum over source degrees of the kernels of the restricted blocks.
GradedSubspace kernel(const GradedMap& f);
GradedSubspace intersect(const GradedSubspace& a, const GradedSubspace& b);
/// W1 (x) W2 inside ambient, where ambient = tensor(W1.ambient, W2.ambient).
GradedSubspace tensor_subspace(const GradedSubspace& w1, const GradedSubspace& w2, SpacePtr ambient);
/// (W1 (x) V2) intersected with (V1 (x) W2), computed by generic linear algebra.
GradedSubspace intersect_tensor(const GradedSubspace& w1, const GradedSubspace& w2, SpacePtr ambient);

/// V / W with the non-pivot basis vectors as representatives.
struct Quotient {
  GradedSubspace sub;
  SpacePtr carrier;
  std::vector<Index> reps;               // ambient index per carrier index
  std::map<Index, Index> carrier_index;  // ambient index -> carrier index

  SparseVector project(const SparseVector& v) const;
  SparseVector lift(const SparseVector& x) const;
};

Quotient quotient(const GradedSubspace& w);

}  // namespace vakit
