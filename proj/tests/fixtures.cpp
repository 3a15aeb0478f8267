#include "fixtures.hpp"

#include <stdexcept>

namespace fixtures {

std::vector<std::string> algebra_names() {
  return {"trivial", "diff-eps3", "diff-eps4", "dzero", "zero-beta", "exterior1", "exterior2", "exterior3"};
}

std::vector<std::string> module_names() {
  return {"adjoint-diff-eps3", "free2-diff-eps3", "adjoint-exterior2", "free2-exterior2", "free1-zero-beta"};
}

std::vector<std::string> sound_algebra_names() {
  return {"trivial", "diff-eps3", "diff-eps4", "dzero", "exterior1", "exterior2", "exterior3"};
}

std::vector<std::string> sound_module_names() {
  return {"adjoint-diff-eps3", "free2-diff-eps3", "adjoint-exterior2", "free2-exterior2"};
}

namespace {

std::size_t section_start(const std::string& text, const std::string& section) {
  auto at = text.find("[" + section + "]\n");
  if (at == std::string::npos) throw std::logic_error("no section " + section);
  return at + section.size() + 3;
}

std::size_t section_end(const std::string& text, std::size_t start) {
  auto next = text.find("\n[", start - 1);
  return next == std::string::npos ? text.size() : next + 1;
}

LinearMap table(const GradedSpace& left, const GradedSpace& right, const GradedSpace& target,
                const std::vector<std::pair<std::string, std::string>>& entries) {
  LinearMap f(left.dim() * right.dim(), target.dim());
  for (const auto& [key, value] : entries) {
    auto sp = key.find(' ');
    Index a = left.index_of(key.substr(0, sp));
    Index b = right.index_of(key.substr(sp + 1));
    f.set_column(a * right.dim() + b, parse_vector(value, target));
  }
  return f;
}

SpacePtr trivial_space(const std::vector<std::string>& labels) {
  GroupSpec g;
  std::vector<BasisElement> basis;
  for (const auto& l : labels) basis.push_back({l, GroupElement::zero(g)});
  return make_space(g, basis);
}

template <class T>
PlantedDefect vertex_defect(std::string name, std::string clause, T data) {
  auto owned = std::make_shared<const T>(std::move(data));
  PlantedDefect d;
  d.name = std::move(name);
  d.clause = std::move(clause);
  d.check = [owned] {
    if constexpr (std::is_same_v<T, VertexAlgebraData>) return check_algebra(*owned);
    if constexpr (std::is_same_v<T, VertexCoalgebraData>) return check_coalgebra(*owned);
    if constexpr (std::is_same_v<T, ModuleData>) return check_module(*owned);
    if constexpr (std::is_same_v<T, ComoduleData>) return check_comodule(*owned);
  };
  d.identities = [owned] {
    if constexpr (std::is_same_v<T, VertexAlgebraData>) return algebra_identities(*owned);
    if constexpr (std::is_same_v<T, VertexCoalgebraData>) return coalgebra_identities(*owned);
    if constexpr (std::is_same_v<T, ModuleData>) return module_identities(*owned);
    if constexpr (std::is_same_v<T, ComoduleData>) return comodule_identities(*owned);
  };
  return d;
}

PlantedDefect poisson_defect(std::string name, std::string clause, PoissonAlgebraData p) {
  auto owned = std::make_shared<const PoissonAlgebraData>(std::move(p));
  return {std::move(name), std::move(clause), [owned] { return check_poisson(*owned); },
          [owned] { return poisson_identities(*owned); }};
}

PlantedDefect copoisson_defect(std::string name, std::string clause, CoPoissonCoalgebraData p) {
  auto owned = std::make_shared<const CoPoissonCoalgebraData>(std::move(p));
  return {std::move(name), std::move(clause), [owned] { return check_copoisson(*owned); },
          [owned] { return copoisson_identities(*owned); }};
}

PlantedDefect poisson_module_defect(std::string name, std::string clause, PoissonModuleData m) {
  auto owned = std::make_shared<const PoissonModuleData>(std::move(m));
  return {std::move(name), std::move(clause), [owned] { return check_poisson_module(*owned); },
          [owned] { return poisson_module_identities(*owned); }};
}

PlantedDefect copoisson_comodule_defect(std::string name, std::string clause, CoPoissonComoduleData m) {
  auto owned = std::make_shared<const CoPoissonComoduleData>(std::move(m));
  return {std::move(name), std::move(clause), [owned] { return check_copoisson_comodule(*owned); },
          [owned] { return copoisson_comodule_identities(*owned); }};
}

std::string text_of(const std::string& example) { return serialize(make_example(example)); }

}  // namespace

std::string edit(const std::string& text, const std::string& section, const std::string& from,
                 const std::string& to) {
  std::size_t start = section_start(text, section);
  std::size_t end = section_end(text, start);
  std::size_t at = text.find(from + "\n", start);
  while (at != std::string::npos && at != start && text[at - 1] != '\n') at = text.find(from + "\n", at + 1);
  if (at == std::string::npos || at >= end) throw std::logic_error("no line '" + from + "' in [" + section + "]");
  return text.substr(0, at) + to + text.substr(at + from.size());
}

std::string append(const std::string& text, const std::string& section, const std::string& line) {
  std::size_t end = section_end(text, section_start(text, section));
  return text.substr(0, end) + line + "\n" + text.substr(end);
}

Structure parse(const std::string& text) { return parse_structure(text).structure; }

PoissonAlgebraData poisson(const std::vector<std::string>& labels,
                           const std::vector<std::pair<std::string, std::string>>& product,
                           const std::vector<std::pair<std::string, std::string>>& bracket,
                           const std::string& unit) {
  PoissonAlgebraData p;
  p.carrier = trivial_space(labels);
  p.product = table(*p.carrier, *p.carrier, *p.carrier, product);
  p.bracket = table(*p.carrier, *p.carrier, *p.carrier, bracket);
  p.unit = parse_vector(unit, *p.carrier);
  p.beta = BetaSpec::one();
  p.gamma0 = GroupElement::zero(p.carrier->spec());
  return p;
}

PoissonModuleData poisson_module(std::shared_ptr<const PoissonAlgebraData> base, const std::vector<std::string>& labels,
                                 const std::vector<std::pair<std::string, std::string>>& action,
                                 const std::vector<std::pair<std::string, std::string>>& lie_action) {
  PoissonModuleData m;
  m.base = std::move(base);
  m.carrier = trivial_space(labels);
  m.action = table(*m.base->carrier, *m.carrier, *m.carrier, action);
  m.lie_action = table(*m.base->carrier, *m.carrier, *m.carrier, lie_action);
  return m;
}

CoPoissonCoalgebraData transpose(const PoissonAlgebraData& p) {
  CoPoissonCoalgebraData c;
  c.carrier = p.carrier;
  c.coproduct = p.product.transpose();
  c.cobracket = p.bracket.transpose();
  c.counit = p.unit;
  c.beta = p.beta;
  c.gamma0 = p.gamma0;
  return c;
}

CoPoissonComoduleData transpose(std::shared_ptr<const CoPoissonCoalgebraData> base, const PoissonModuleData& m) {
  const Index dx = m.base->carrier->dim();
  const Index dm = m.carrier->dim();
  auto flip = [dx, dm](const LinearMap& act) {
    LinearMap out(dm, dm * dx);
    for (Index a = 0; a < dx; ++a) {
      for (Index n = 0; n < dm; ++n) {
        for (const auto& [k, v] : act.column(a * dm + n)) out.add_entry(n * dx + a, k, v);
      }
    }
    return out;
  };
  CoPoissonComoduleData c;
  c.base = std::move(base);
  c.carrier = m.carrier;
  c.coaction = flip(m.action);
  c.lie_coaction = flip(m.lie_action);
  return c;
}

PoissonAlgebraData small_poisson() {
  return poisson({"one", "x", "y"},
                 {{"one one", "one"}, {"one x", "x"}, {"one y", "y"}, {"x one", "x"}, {"y one", "y"}, {"x x", "y"}},
                 {}, "one");
}

std::vector<PlantedDefect> planted_defects() {
  std::vector<PlantedDefect> out;
  const std::string eps3 = text_of("diff-eps3");
  const std::string eps4 = text_of("diff-eps4");
  const std::string ext2 = text_of("exterior2");
  const std::string adj3 = text_of("adjoint-diff-eps3");
  const std::string free2 = text_of("free2-exterior2");

  struct VertexCase {
    std::string name;
    std::string clause;
    std::string co_clause;
    std::string text;
  };
  const std::vector<VertexCase> algebra_cases = {
      {"vacuum-off-degree", "vacuum_degree", "covacuum_degree", edit(ext2, "vacuum", "one", "one + t1")},
      {"vacuum-scaled", "vacuum", "covacuum", edit(eps3, "Y", "-1 one e -> e", "-1 one e -> 2*e")},
      {"creation-scaled", "creation", "cocreation", edit(eps3, "Y", "-1 e one -> e", "-1 e one -> 2*e")},
      {"product-off-degree", "truncation", "cotruncation",
       edit(ext2, "Y", "-1 t1 t2 -> t1t2", "-1 t1 t2 -> t1t2 + t1")},
      {"wedge-sign-flipped", "jacobi", "cojacobi", edit(ext2, "Y", "-1 t2 t1 -> -t1t2", "-1 t2 t1 -> t1t2")},
      {"translation-scaled", "derivation_1", "coderivation_1", edit(eps4, "Y", "-2 e one -> e2", "-2 e one -> 2*e2")},
      {"second-mode-scaled", "derivation_2", "coderivation_2", edit(eps4, "Y", "-2 e e -> e3", "-2 e e -> 2*e3")},
  };
  for (const auto& c : algebra_cases) {
    Structure s = parse(c.text);
    out.push_back(vertex_defect("algebra/" + c.name, c.clause, *s.algebra));
    out.push_back(vertex_defect("coalgebra/" + c.name, c.co_clause, dualize_algebra(*s.algebra).first));
  }

  const std::vector<VertexCase> module_cases = {
      {"vacuum-scaled", "vacuum_mod", "covacuum_mod", edit(adj3, "YM", "-1 one e -> e", "-1 one e -> 2*e")},
      {"action-off-degree", "truncation_mod", "cotruncation_mod",
       edit(free2, "YM", "-1 t1 t2#1 -> t1t2#1", "-1 t1 t2#1 -> t1t2#1 + t1#1")},
      {"wedge-sign-flipped", "jacobi_mod", "cojacobi_mod",
       edit(free2, "YM", "-1 t2 t1#1 -> -t1t2#1", "-1 t2 t1#1 -> t1t2#1")},
      {"derivation-off-degree", "derivation_mod_degree", "coderivation_mod_degree",
       append(free2, "DM", "one#1 -> t1#1")},
      {"derivation-scaled", "derivation_mod_1", "coderivation_mod_1", edit(adj3, "DM", "e -> e2", "e -> 2*e2")},
      {"second-mode-scaled", "derivation_mod_2", "coderivation_mod_2",
       edit(adj3, "YM", "-2 e one -> e2", "-2 e one -> 2*e2")},
  };
  for (const auto& c : module_cases) {
    Structure s = parse(c.text);
    out.push_back(vertex_defect("module/" + c.name, c.clause, *s.module));
    out.push_back(vertex_defect("comodule/" + c.name, c.co_clause, dualize_module(*s.module).first));
  }

  const std::vector<std::pair<std::string, std::string>> unit_rows = {
      {"one one", "one"}, {"one x", "x"}, {"one y", "y"}, {"x one", "x"}, {"y one", "y"}};
  auto with = [&unit_rows](std::vector<std::pair<std::string, std::string>> extra) {
    auto rows = unit_rows;
    for (auto& e : extra) rows.push_back(std::move(e));
    return rows;
  };
  struct PoissonCase {
    std::string name;
    std::string clause;
    std::string co_clause;
    PoissonAlgebraData p;
  };
  const std::vector<PoissonCase> poisson_cases = {
      {"non-associative", "associativity", "coassociativity",
       poisson({"one", "x", "y"}, with({{"x x", "y"}, {"x y", "x"}, {"y x", "x"}}), {}, "one")},
      {"left-unit-scaled", "unit_left", "counit_left",
       poisson({"one", "x", "y"}, {{"one one", "one"}, {"one x", "2*x"}, {"one y", "y"}, {"x one", "x"}, {"y one", "y"}},
               {}, "one")},
      {"right-unit-scaled", "unit_right", "counit_right",
       poisson({"one", "x", "y"}, {{"one one", "one"}, {"one x", "x"}, {"one y", "y"}, {"x one", "2*x"}, {"y one", "y"}},
               {}, "one")},
      {"non-commutative", "beta_commutative", "beta_cocommutative",
       poisson({"one", "x", "y"}, with({{"x y", "y"}}), {}, "one")},
      {"bracket-not-skew", "lie_skew", "colie_skew",
       poisson({"one", "x", "y"}, with({}), {{"x y", "x"}}, "one")},
      {"bracket-not-jacobi", "lie_jacobi", "colie_jacobi",
       poisson({"one", "x", "y", "z"}, with({{"one z", "z"}, {"z one", "z"}}), {{"x y", "x"}, {"y x", "-x"}, {"x z", "y"}, {"z x", "-y"}}, "one")},
      {"bracket-not-derivation", "leibniz", "coleibniz",
       poisson({"one", "x", "y"}, with({}), {{"one x", "x"}, {"x one", "-x"}}, "one")},
  };
  for (const auto& c : poisson_cases) {
    out.push_back(poisson_defect("poisson/" + c.name, c.clause, c.p));
    out.push_back(copoisson_defect("copoisson/" + c.name, c.co_clause, transpose(c.p)));
  }

  auto base = std::make_shared<const PoissonAlgebraData>(
      poisson({"one", "e"}, {{"one one", "one"}, {"one e", "e"}, {"e one", "e"}}, {}, "one"));
  auto cobase = std::make_shared<const CoPoissonCoalgebraData>(transpose(*base));
  struct ModuleCase {
    std::string name;
    std::string clause;
    std::string co_clause;
    PoissonModuleData m;
  };
  const std::vector<ModuleCase> module_poisson_cases = {
      {"non-associative", "module_associativity", "comodule_coassociativity",
       poisson_module(base, {"m"}, {{"one m", "m"}, {"e m", "m"}}, {})},
      {"unit-scaled", "module_unit", "comodule_counit", poisson_module(base, {"m"}, {{"one m", "2*m"}}, {})},
      {"lie-not-representation", "lie_module", "colie_comodule",
       poisson_module(base, {"m1", "m2"}, {{"one m1", "m1"}, {"one m2", "m2"}}, {{"one m1", "m2"}, {"e m2", "m1"}})},
      {"lie-not-derivation", "poisson_module_compatibility", "copoisson_comodule_compatibility",
       poisson_module(base, {"m1", "m2"}, {{"one m1", "m1"}, {"one m2", "m2"}, {"e m1", "m2"}}, {{"one m1", "m1"}})},
  };
  for (const auto& c : module_poisson_cases) {
    out.push_back(poisson_module_defect("poisson-module/" + c.name, c.clause, c.m));
    out.push_back(copoisson_comodule_defect("copoisson-comodule/" + c.name, c.co_clause, transpose(cobase, c.m)));
  }
  return out;
}

}  // namespace fixtures
