#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"

using namespace vakit;
using fixtures::edit;

namespace {

std::string canonical(const std::string& name) { return serialize(make_example(name)); }

ParseError parse_error(const std::string& text) {
  try {
    parse_structure(text, "t.vas");
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a parse error";
  return ParseError("", 0, 0, "");
}

std::string remove_section(const std::string& text, const std::string& section) {
  auto at = text.find("[" + section + "]\n");
  auto end = text.find("\n[", at + 1);
  return text.substr(0, at) + text.substr(end + 1);
}

}  // namespace

TEST(StructureFile, RoundTripEveryExample) {
  for (const auto& n : example_names()) {
    Structure s = make_example(n);
    std::string text = serialize(s);
    auto r = parse_structure(text);
    EXPECT_TRUE(r.warnings.empty()) << n;
    EXPECT_EQ(serialize(r.structure), text) << n;
    EXPECT_EQ(structure_digest(r.structure), structure_digest(s)) << n;
    EXPECT_EQ(r.structure.kind, s.kind) << n;
  }
}

TEST(StructureFile, RoundTripPreservesVerdicts) {
  for (const auto& n : fixtures::algebra_names()) {
    auto a = make_example(n);
    auto b = fixtures::parse(serialize(a));
    EXPECT_EQ(check_algebra(*a.algebra).to_json(false), check_algebra(*b.algebra).to_json(false)) << n;
  }
}

TEST(StructureFile, SaveAndLoad) {
  auto dir = std::filesystem::temp_directory_path() / "vakit_sf_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "eps3.vas").string();
  save_structure(make_example("diff-eps3"), path);
  auto r = load_structure(path);
  EXPECT_EQ(serialize(r.structure), canonical("diff-eps3"));
  EXPECT_THROW(load_structure((dir / "missing.vas").string()), IoError);
  std::filesystem::remove_all(dir);
}

TEST(StructureFile, CommentsAndBlankLines) {
  std::string t = canonical("exterior2");
  t = "# exterior algebra\n\n" + t;
  t = edit(t, "vacuum", "one", "one   # the unit");
  auto r = parse_structure(t);
  EXPECT_EQ(serialize(r.structure), canonical("exterior2"));
}

TEST(StructureFile, MissingSectionIsNamed) {
  auto e = parse_error(remove_section(canonical("diff-eps3"), "vacuum"));
  EXPECT_NE(std::string(e.what()).find("[vacuum]"), std::string::npos) << e.what();
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 1u);
}

TEST(StructureFile, UnknownAndDuplicateSections) {
  auto t = canonical("trivial");
  auto e = parse_error(t + "[bogus]\n");
  EXPECT_NE(e.message().find("bogus"), std::string::npos) << e.message();
  auto d = parse_error(t + "[vacuum]\none\n");
  EXPECT_NE(d.message().find("duplicate"), std::string::npos) << d.message();
}

TEST(StructureFile, UndeclaredLabelHasLineAndColumn) {
  auto t = edit(canonical("diff-eps3"), "Y", "-1 e e -> e2", "-1 e e -> e2 + q");
  auto e = parse_error(t);
  EXPECT_NE(e.message().find("undeclared basis label 'q'"), std::string::npos) << e.message();
  std::size_t line = 1;
  auto at = t.find("-1 e e -> e2 + q");
  for (std::size_t i = 0; i < at; ++i) line += t[i] == '\n';
  EXPECT_EQ(e.line(), line);
  EXPECT_EQ(e.column(), 16u);
}

TEST(StructureFile, BadScalar) {
  auto t = edit(canonical("diff-eps3"), "Y", "-1 e e -> e2", "-1 e e -> (1/0)*e2");
  auto e = parse_error(t);
  EXPECT_GT(e.line(), 1u);
  EXPECT_GE(e.column(), 11u);
}

TEST(StructureFile, DegreeArityMismatch) {
  auto t = edit(canonical("exterior2"), "space", "(1) t1 t2", "(1,0) t1 t2");
  auto e = parse_error(t);
  EXPECT_NE(e.message().find("coordinate"), std::string::npos) << e.message();
  EXPECT_EQ(e.column(), 1u);
}

TEST(StructureFile, TorsionWarning) {
  std::string t = canonical("trivial");
  t = edit(t, "group", "free_rank 0", "free_rank 0\ntorsion 3");
  t = edit(t, "group", "gamma0 ()", "gamma0 (0)");
  t = edit(t, "space", "() one", "(4) one");
  auto r = parse_structure(t);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("reduced modulo 3"), std::string::npos) << r.warnings[0];
  EXPECT_EQ(r.structure.algebra->space->degree(0).coords(), std::vector<std::int64_t>{1});
}

TEST(StructureFile, DuplicateEntriesAndLabels) {
  auto t = fixtures::append(canonical("diff-eps3"), "Y", "-1 e e -> e2");
  EXPECT_NE(parse_error(t).message().find("duplicate"), std::string::npos);
  auto u = edit(canonical("diff-eps3"), "space", "() one e e2", "() one e e");
  EXPECT_NE(parse_error(u).message().find("duplicate"), std::string::npos);
}

TEST(StructureFile, SectionForbiddenForKind) {
  auto t = canonical("diff-eps3") + "[coY]\n-1 one -> one|one\n";
  auto e = parse_error(t);
  EXPECT_NE(e.message().find("coY"), std::string::npos) << e.message();
}

TEST(StructureFile, VectorSyntax) {
  auto v = make_example("diff-eps3").algebra->space;
  EXPECT_EQ(parse_vector("0", *v), SparseVector());
  auto x = parse_vector("2*e - 1/2*e2 + one", *v);
  EXPECT_EQ(x.get(0), Scalar(1));
  EXPECT_EQ(x.get(1), Scalar(2));
  EXPECT_EQ(x.get(2), Scalar(-1, 2));
  EXPECT_EQ(v->render(x), "one + 2*e - 1/2*e2");
  auto z = parse_vector("(z + 1)*e", *v, 3);
  EXPECT_EQ(z.get(1), Scalar::zeta(3) + Scalar(1));
  EXPECT_THROW(parse_vector("e +", *v), ParseError);
  EXPECT_THROW(parse_vector("f", *v), ParseError);
}

TEST(StructureFile, CyclotomicRoundTrip) {
  Structure s = make_example("exterior2");
  VertexAlgebraData a = *s.algebra;
  const Index d = a.space->dim();
  LinearMap y = a.ops.at(-1);
  SparseVector c = y.column(1 * d + 2);
  y.set_column(1 * d + 2, c.scaled(Scalar::zeta(6)));
  a.ops[-1] = y;
  Structure t = Structure::of(a);
  t.conductor = 6;
  auto text = serialize(t);
  EXPECT_NE(text.find("conductor 6"), std::string::npos);
  EXPECT_EQ(serialize(parse_structure(text).structure), text);
}
