#include <gtest/gtest.h>

#include <random>

#include "vakit/graded.hpp"

using namespace vakit;

namespace {

const GroupSpec kZ{1, {}};
GroupElement d(std::int64_t n) { return GroupElement(kZ, {n}); }

SpacePtr space(std::vector<std::pair<std::string, std::int64_t>> b) {
  std::vector<BasisElement> basis;
  for (auto& [l, g] : b) basis.push_back({l, d(g)});
  return make_space(kZ, basis);
}

// Rank of a dense rational matrix by plain Gaussian elimination.
std::size_t rank_of(std::vector<std::vector<mpq_class>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

std::vector<mpq_class> dense(const SparseVector& v, Index n) {
  std::vector<mpq_class> out(n);
  for (const auto& [i, c] : v) out[i] = c.rational();
  return out;
}

}  // namespace

TEST(Graded, TensorDimensions) {
  auto v = space({{"a", 1}, {"b", 1}});
  auto w = space({{"x", 1}, {"y", 1}, {"z", 1}});
  GradedSpace t = tensor(*v, *w);
  EXPECT_EQ(t.dim_at(d(2)), 6u);
  EXPECT_EQ(t.label(1), "a|y");
  auto s = space({{"p", 0}, {"q", 1}});
  EXPECT_EQ(tensor(*s, *s).support(), (std::vector<GroupElement>{d(0), d(1), d(2)}));
  GradedSpace unit = ground_field(kZ);
  GradedSpace uw = tensor(unit, *w);
  EXPECT_EQ(uw.dim(), w->dim());
  for (Index i = 0; i < w->dim(); ++i) EXPECT_EQ(uw.degree(i), w->degree(i));
}

TEST(Graded, RestrictedDual) {
  auto v = space({{"a", 1}, {"b", 1}, {"c", 0}});
  GradedSpace dv = restricted_dual(*v);
  EXPECT_EQ(dv.dim_at(d(-1)), 2u);
  EXPECT_EQ(dv.label(0), "a'");
  GradedSpace ddv = restricted_dual(dv);
  EXPECT_EQ(ddv.label(2), "c''");
  for (Index i = 0; i < v->dim(); ++i) EXPECT_EQ(ddv.degree(i), v->degree(i));
  auto z = space({{"u", 0}});
  EXPECT_EQ(restricted_dual(*z).support(), std::vector<GroupElement>{d(0)});
}

TEST(Graded, InternalHom) {
  GroupElement g = d(2), h = d(5);
  GradedSpace kg = ground_field(kZ, &g), kh = ground_field(kZ, &h);
  GradedSpace hom = internal_hom(kg, kh);
  ASSERT_EQ(hom.dim(), 1u);
  EXPECT_EQ(hom.degree(0), d(3));
  auto v = space({{"a", 1}, {"b", 2}, {"c", 2}});
  GradedSpace hv = internal_hom(*v, ground_field(kZ));
  GradedSpace dv = restricted_dual(*v);
  ASSERT_EQ(hv.dim(), dv.dim());
  for (Index i = 0; i < dv.dim(); ++i) EXPECT_EQ(hv.degree(i), dv.degree(i));
  auto w = space({{"x", 1}, {"y", 3}});
  GradedSpace hw = internal_hom(*v, *w);
  // Hom blocks: V_1 -> W_{1+k}, V_2 -> W_{2+k}
  EXPECT_EQ(hw.dim_at(d(0)), 1u);
  EXPECT_EQ(hw.dim_at(d(1)), 2u);
  EXPECT_EQ(hw.dim_at(d(2)), 1u);
  EXPECT_EQ(hw.dim_at(d(-1)), 2u);
}

TEST(Graded, TBeta) {
  auto v = space({{"a", 1}, {"b", 0}});
  auto t1 = t_beta(v, v, BetaSpec::one());
  EXPECT_EQ(t1.map.column(0 * 2 + 1), SparseVector::basis(1 * 2 + 0));
  EXPECT_EQ(compose(t1.map, t1.map), LinearMap::identity(4));
  EXPECT_TRUE(t_beta(v, v, BetaSpec::zero()).map.is_zero());
  auto ts = t_beta(v, v, BetaSpec::sign_bilinear({{1}}));
  EXPECT_EQ(ts.map.column(0), SparseVector::basis(0, Scalar(-1)));
  EXPECT_EQ(ts.map.column(1), SparseVector::basis(2, Scalar(1)));
}

TEST(Graded, XiBeta) {
  auto v = space({{"a", 1}, {"b", 0}});
  auto x = xi_beta(v, BetaSpec::one());
  // u (x) v (x) w -> v (x) w (x) u
  Index u = 0, vv = 1, w = 1;
  EXPECT_EQ(x.map.column((u * 2 + vv) * 2 + w), SparseVector::basis((vv * 2 + w) * 2 + u));
  EXPECT_TRUE(xi_beta(v, BetaSpec::zero()).map.is_zero());
  auto xs = xi_beta(v, BetaSpec::sign_bilinear({{1}}));
  LinearMap cube = compose(xs.map, compose(xs.map, xs.map));
  for (Index j = 0; j < cube.source_dim(); ++j) {
    ASSERT_EQ(cube.column(j).nnz(), 1u);
    EXPECT_EQ(cube.column(j).begin()->first, j);
  }
}

TEST(Graded, KernelImageQuotient) {
  auto v = space({{"a", 0}, {"b", 0}});
  GradedMap zero{v, v, d(0), LinearMap(2, 2)};
  EXPECT_EQ(kernel(zero).dim(), 2u);
  GradedMap id{v, v, d(0), LinearMap::identity(2)};
  EXPECT_EQ(image(id).dim(), 2u);
  SparseVector diag = SparseVector::basis(0) + SparseVector::basis(1);
  Quotient q = quotient(GradedSubspace::span(v, {diag}));
  EXPECT_EQ(q.carrier->dim(), 1u);
  EXPECT_EQ(q.reps, std::vector<Index>{0});
  EXPECT_EQ(q.project(SparseVector::basis(1)), SparseVector::basis(0, Scalar(-1)));
  EXPECT_EQ(q.lift(SparseVector::basis(0)), SparseVector::basis(0));
}

TEST(Graded, HomogeneousPartsSpan) {
  auto v = space({{"a", 0}, {"b", 1}});
  auto w = GradedSubspace::span(v, {SparseVector::basis(0) + SparseVector::basis(1)});
  EXPECT_EQ(w.dim(), 2u);
}

TEST(Graded, IntersectTensorTrivialCases) {
  auto v1 = space({{"a", 0}, {"b", 1}});
  auto v2 = space({{"x", 0}, {"y", 0}});
  auto amb = make_space(tensor(*v1, *v2));
  auto full = intersect_tensor(GradedSubspace::whole(v1), GradedSubspace::whole(v2), amb);
  EXPECT_EQ(full.dim(), amb->dim());
  auto none = intersect_tensor(GradedSubspace(v1), GradedSubspace::whole(v2), amb);
  EXPECT_EQ(none.dim(), 0u);
}

TEST(Graded, IntersectTensorMatchesOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> c(-3, 3);
  auto v1 = space({{"a", 0}, {"b", 0}});
  auto v2 = space({{"x", 0}, {"y", 0}});
  auto amb = make_space(tensor(*v1, *v2));
  for (int trial = 0; trial < 20; ++trial) {
    SparseVector w1v, w2v;
    w1v.add(0, Scalar(c(rng)));
    w1v.add(1, Scalar(c(rng)));
    w2v.add(0, Scalar(c(rng)));
    w2v.add(1, Scalar(c(rng)));
    if (w1v.is_zero() || w2v.is_zero()) continue;
    auto w1 = GradedSubspace::span(v1, {w1v});
    auto w2 = GradedSubspace::span(v2, {w2v});
    auto got = intersect_tensor(w1, w2, amb);
    auto expect = tensor_subspace(w1, w2, amb);
    EXPECT_EQ(got, expect);
    ASSERT_EQ(got.dim(), 1u);
    // Oracle: the intersection of (W1 (x) V2) and (V1 (x) W2) has dimension
    // dim A + dim B - dim(A + B), computed densely.
    std::vector<std::vector<mpq_class>> a, b, ab;
    for (Index j = 0; j < 2; ++j) a.push_back(dense(tensor_vectors(w1v, SparseVector::basis(j), 2), 4));
    for (Index i = 0; i < 2; ++i) b.push_back(dense(tensor_vectors(SparseVector::basis(i), w2v, 2), 4));
    ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    EXPECT_EQ(rank_of(a) + rank_of(b) - rank_of(ab), 1u);
    auto basis = got.basis();
    auto both = a;
    both.push_back(dense(basis[0], 4));
    EXPECT_EQ(rank_of(both), rank_of(a));
  }
}

TEST(Graded, RenderAndEchelonPivot) {
  auto v = space({{"a", 0}, {"b", 0}, {"c", 0}});
  SparseVector x;
  x.add(0, Scalar(2));
  x.add(2, Scalar(-1, 2));
  EXPECT_EQ(v->render(x), "2*a - 1/2*c");
  EXPECT_EQ(v->render(SparseVector()), "0");
  EchelonBasis e;
  EXPECT_TRUE(e.insert(x));
  EXPECT_FALSE(e.insert(x.scaled(Scalar(3))));
  EXPECT_EQ(e.pivots(), std::vector<Index>{2});
}
