#include <gtest/gtest.h>

#include "vakit/gamma.hpp"
#include "vakit/graded.hpp"

using namespace vakit;

namespace {

GroupSpec Z(int r) { return GroupSpec{r, {}}; }
GroupElement el(const GroupSpec& s, std::vector<std::int64_t> c) { return GroupElement(s, std::move(c)); }

}  // namespace

TEST(Group, Addition) {
  auto z2 = Z(2);
  EXPECT_EQ(el(z2, {1, 0}) + el(z2, {0, 1}), el(z2, {1, 1}));
  GroupSpec c2{0, {2}};
  EXPECT_TRUE((el(c2, {1}) + el(c2, {1})).is_zero());
  EXPECT_EQ(el(Z(1), {3}) + el(Z(1), {-1}), el(Z(1), {2}));
  EXPECT_EQ(el(c2, {5}), el(c2, {1}));
  EXPECT_EQ(el(Z(1), {2}).scaled(-3), el(Z(1), {-6}));
}

TEST(Group, SpecMismatch) {
  EXPECT_THROW(el(Z(1), {1}) + el(Z(2), {1, 0}), GroupError);
  EXPECT_THROW(el(Z(2), {1}), GroupError);
}

TEST(Beta, Evaluation) {
  auto z1 = Z(1);
  auto sign = BetaSpec::sign_bilinear({{1}});
  EXPECT_EQ(sign(el(z1, {2}), el(z1, {3})), Scalar(1));
  EXPECT_EQ(sign(el(z1, {3}), el(z1, {3})), Scalar(-1));
  EXPECT_EQ(BetaSpec::one()(el(z1, {7}), el(z1, {-4})), Scalar(1));
  EXPECT_EQ(BetaSpec::zero()(el(z1, {0}), el(z1, {0})), Scalar(0));
  auto z2 = Z(2);
  auto q = BetaSpec::q_bilinear(Scalar::zeta(4), {{0, 1}, {-1, 0}});
  EXPECT_EQ(q(el(z2, {1, 0}), el(z2, {0, 1})), Scalar::zeta(4));
  EXPECT_EQ(q(el(z2, {0, 1}), el(z2, {1, 0})), Scalar::zeta(4).pow(3));
}

TEST(Beta, TableMissIsAnError) {
  auto z1 = Z(1);
  auto t = BetaSpec::table({{{el(z1, {0}), el(z1, {0})}, Scalar(1)}});
  EXPECT_EQ(t(el(z1, {0}), el(z1, {0})), Scalar(1));
  EXPECT_THROW(t(el(z1, {1}), el(z1, {0})), GroupError);
}

TEST(Beta, OnePassesEverything) {
  auto dom = group_box(Z(2), 3);
  EXPECT_EQ(dom.size(), 49u);
  auto rep = check_beta_relations(BetaSpec::one(), dom, GroupElement::zero(Z(2)));
  EXPECT_EQ(rep.results.size(), 7u);
  for (const auto& r : rep.results) EXPECT_EQ(r.verdict, Verdict::Pass) << r.id;
}

TEST(Beta, SignBilinearLandscape) {
  auto z1 = Z(1);
  auto rep = check_beta_relations(BetaSpec::sign_bilinear({{1}}), group_box(z1, 3), GroupElement::zero(z1));
  for (const auto& r : rep.results) EXPECT_EQ(r.verdict, Verdict::Pass) << r.id;
}

TEST(Beta, ZeroLandscape) {
  auto z2 = Z(2);
  auto rep = check_beta_relations(BetaSpec::zero(), group_box(z2, 3), GroupElement::zero(z2));
  EXPECT_EQ(rep.verdict_of("parity"), Verdict::Pass);
  EXPECT_EQ(rep.verdict_of("multiplicative"), Verdict::Pass);
  EXPECT_EQ(rep.verdict_of("cocycle"), Verdict::Pass);
  EXPECT_EQ(rep.verdict_of("unit_right"), Verdict::Fail);
  EXPECT_EQ(rep.verdict_of("inverse_sym"), Verdict::Fail);
  const auto* u = rep.find("unit_right");
  ASSERT_TRUE(u->witness);
  EXPECT_EQ(u->witness->lhs, "0");
  EXPECT_EQ(u->witness->rhs, "1");
}

TEST(Beta, ShiftRelationNeedsCompatibleGamma0) {
  auto z1 = Z(1);
  auto sign = BetaSpec::sign_bilinear({{1}});
  auto dom = group_box(z1, 3);
  EXPECT_EQ(check_beta_relation(sign, RelationKind::Shift2Gamma0, dom, el(z1, {1})).verdict, Verdict::Pass);
  auto q = BetaSpec::q_bilinear(Scalar::zeta(3), {{1}});
  EXPECT_EQ(check_beta_relation(q, RelationKind::Shift2Gamma0, dom, el(z1, {1})).verdict, Verdict::Fail);
}

TEST(Beta, ProductKeepsRelations) {
  auto z1 = Z(1);
  auto p = BetaSpec::product({BetaSpec::one(), BetaSpec::sign_bilinear({{1}})});
  auto rep = check_beta_relations(p, group_box(z1, 3), GroupElement::zero(z1));
  for (const auto& r : rep.results) EXPECT_EQ(r.verdict, Verdict::Pass) << r.id;
}

TEST(Beta, QBilinearIsBicharacter) {
  auto z2 = Z(2);
  auto q = BetaSpec::q_bilinear(Scalar::zeta(6), {{0, 1}, {-1, 0}});
  auto dom = group_box(z2, 2);
  auto g0 = GroupElement::zero(z2);
  EXPECT_EQ(check_beta_relation(q, RelationKind::Multiplicative, dom, g0).verdict, Verdict::Pass);
  EXPECT_EQ(check_beta_relation(q, RelationKind::Cocycle, dom, g0).verdict, Verdict::Pass);
}

TEST(Cactus, BetaOneAndSign) {
  auto z1 = Z(1);
  GradedSpace u(z1, {{"u", el(z1, {1})}}), v(z1, {{"v", el(z1, {1})}}), w(z1, {{"w", el(z1, {1})}});
  for (const auto& b : {BetaSpec::one(), BetaSpec::sign_bilinear({{1}})}) {
    auto rep = check_cactus(b, u, v, w);
    EXPECT_EQ(rep.verdict_of("cactus"), Verdict::Pass) << b.describe();
  }
}

TEST(Cactus, CocycleFailureIsPrecondition) {
  auto z1 = Z(1);
  GradedSpace u(z1, {{"u", el(z1, {1})}});
  std::map<std::pair<GroupElement, GroupElement>, Scalar> t;
  for (auto a : {-3, -2, -1, 0, 1, 2, 3}) {
    for (auto b : {-3, -2, -1, 0, 1, 2, 3}) t[{el(z1, {a}), el(z1, {b})}] = Scalar(a == 1 && b == 1 ? 2 : (a == 2 && b == 1 ? 3 : 1));
  }
  auto rep = check_cactus(BetaSpec::table(t), u, u, u);
  EXPECT_EQ(rep.verdict_of("cocycle_on_support"), Verdict::Precondition);
  EXPECT_EQ(rep.verdict_of("cactus"), Verdict::Precondition);
}
