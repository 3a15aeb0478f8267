#include "vakit/commands.hpp"

#include <chrono>
#include <fstream>

#include "vakit/builders.hpp"
#include "vakit/c2.hpp"
#include "vakit/duality.hpp"
#include "vakit/structure_file.hpp"

namespace vakit {

namespace {

AxiomResult info(const std::string& id, const std::string& detail, nlohmann::json data = {}) {
  AxiomResult r;
  r.id = id;
  r.anchor = "io";
  r.verdict = Verdict::Info;
  r.detail = detail;
  r.data = std::move(data);
  return r;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void need_kind(const Structure& s, StructureKind k, const std::string& what) {
  if (s.kind != k) {
    throw UsageError(what + " needs kind " + kind_name(k) + ", input has kind " + kind_name(s.kind));
  }
}

const GradedSpace& base_space(const Structure& s) {
  return s.algebra ? *s.algebra->space : *s.coalgebra->space;
}

CheckReport beta_suite(const Structure& s) {
  const bool alg = s.algebra != nullptr;
  const BetaSpec& beta = alg ? s.algebra->beta : s.coalgebra->beta;
  const GroupElement& g0 = alg ? s.algebra->gamma0 : s.coalgebra->gamma0;
  const GradedSpace& v = base_space(s);
  CheckReport rep = check_beta_relations(beta, group_box(v.spec(), 3), g0);
  rep.suite = "beta";
  rep.merge(check_cactus(beta, v, v, v));
  return rep;
}

std::string render_map_entry(const GradedSpace& target, const SparseVector& v) { return target.render(v); }

nlohmann::json space_json(const GradedSpace& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.dim(); ++i) out.push_back({{"label", v.label(i)}, {"degree", v.degree(i).str()}});
  return out;
}

nlohmann::json bilinear_json(const LinearMap& f, const GradedSpace& left, const GradedSpace& right,
                             const GradedSpace& target) {
  nlohmann::json out = nlohmann::json::array();
  for (Index c = 0; c < f.source_dim(); ++c) {
    if (f.column(c).is_zero()) continue;
    out.push_back(left.label(c / right.dim()) + " " + right.label(c % right.dim()) + " -> " +
                  render_map_entry(target, f.column(c)));
  }
  return out;
}

nlohmann::json linear_json(const LinearMap& f, const GradedSpace& source, const GradedSpace& target) {
  nlohmann::json out = nlohmann::json::array();
  for (Index c = 0; c < f.source_dim(); ++c) {
    if (f.column(c).is_zero()) continue;
    out.push_back(source.label(c) + " -> " + target.render(f.column(c)));
  }
  return out;
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index r = 0; r < m.rows; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Index c = 0; c < m.cols; ++c) row.push_back(m.at(r, c).str());
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json graded_map_json(const GradedMap& f) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& [g, m] : f.blocks()) {
    nlohmann::json src = nlohmann::json::array();
    nlohmann::json dst = nlohmann::json::array();
    for (Index i : f.source->component(g)) src.push_back(f.source->label(i));
    for (Index i : f.target->component(g + f.degree)) dst.push_back(f.target->label(i));
    blocks.push_back({{"degree", g.str()}, {"source", src}, {"target", dst}, {"matrix", matrix_json(m)}});
  }
  return blocks;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

nlohmann::json poisson_json(const PoissonAlgebraData& p) {
  const GradedSpace& c = *p.carrier;
  return {{"carrier", space_json(c)},
          {"product", bilinear_json(p.product, c, c, c)},
          {"bracket", bilinear_json(p.bracket, c, c, c)},
          {"unit", c.render(p.unit)}};
}

nlohmann::json copoisson_json(const CoPoissonCoalgebraData& p) {
  const GradedSpace& c = *p.carrier;
  GradedSpace cc = tensor(c, c);
  return {{"carrier", space_json(c)},
          {"coproduct", linear_json(p.coproduct, c, cc)},
          {"cobracket", linear_json(p.cobracket, c, cc)},
          {"counit", c.render(p.counit)}};
}

CheckReport select(const CheckReport& rep, const std::vector<std::string>& ids) {
  CheckReport out;
  out.suite = rep.suite;
  for (const auto& r : rep.results) {
    for (const auto& id : ids) {
      if (r.id == id) out.add(r);
    }
  }
  return out;
}

}  // namespace

std::optional<Suite> suite_from_name(const std::string& s) {
  if (s == "algebra") return Suite::Algebra;
  if (s == "coalgebra") return Suite::Coalgebra;
  if (s == "module") return Suite::Module;
  if (s == "comodule") return Suite::Comodule;
  if (s == "beta") return Suite::Beta;
  if (s == "all") return Suite::All;
  return std::nullopt;
}

std::string suite_name(Suite s) {
  switch (s) {
    case Suite::Algebra: return "algebra";
    case Suite::Coalgebra: return "coalgebra";
    case Suite::Module: return "module";
    case Suite::Comodule: return "comodule";
    case Suite::Beta: return "beta";
    case Suite::All: return "all";
  }
  return "?";
}

std::optional<IsoTheorem> iso_theorem_from_name(const std::string& s) {
  if (s == "7.5" || s == "poisson") return IsoTheorem::Poisson;
  if (s == "7.6" || s == "copoisson") return IsoTheorem::CoPoisson;
  if (s == "7.10" || s == "poisson-module") return IsoTheorem::PoissonModule;
  if (s == "7.12" || s == "copoisson-comodule") return IsoTheorem::CoPoissonComodule;
  return std::nullopt;
}

std::string iso_theorem_name(IsoTheorem t) {
  switch (t) {
    case IsoTheorem::Poisson: return "poisson";
    case IsoTheorem::CoPoisson: return "copoisson";
    case IsoTheorem::PoissonModule: return "poisson-module";
    case IsoTheorem::CoPoissonComodule: return "copoisson-comodule";
  }
  return "?";
}

StructureKind iso_theorem_kind(IsoTheorem t) {
  switch (t) {
    case IsoTheorem::Poisson: return StructureKind::Algebra;
    case IsoTheorem::CoPoisson: return StructureKind::Coalgebra;
    case IsoTheorem::PoissonModule: return StructureKind::Module;
    case IsoTheorem::CoPoissonComodule: return StructureKind::Comodule;
  }
  return StructureKind::Algebra;
}

CheckReport run_check(const Structure& s, Suite suite, const CheckOptions& opt) {
  Timer timer;
  CheckReport rep;
  rep.suite = suite_name(suite);
  if (suite == Suite::Beta) {
    rep.merge(beta_suite(s));
  } else {
    if (suite != Suite::All) {
      StructureKind want = suite == Suite::Algebra     ? StructureKind::Algebra
                           : suite == Suite::Coalgebra ? StructureKind::Coalgebra
                           : suite == Suite::Module    ? StructureKind::Module
                                                       : StructureKind::Comodule;
      need_kind(s, want, "suite " + suite_name(suite));
    }
    switch (s.kind) {
      case StructureKind::Algebra:
        rep.merge(check_algebra(*s.algebra, opt));
        if (suite == Suite::All) rep.merge(check_translation_consequences(*s.algebra));
        break;
      case StructureKind::Coalgebra:
        rep.merge(check_coalgebra(*s.coalgebra, opt));
        if (suite == Suite::All) rep.merge(check_cotranslation_consequences(*s.coalgebra));
        break;
      case StructureKind::Module:
        rep.merge(check_module(*s.module, opt));
        if (suite == Suite::All && s.module->omega) rep.merge(check_module_translation(*s.module, *s.module->omega));
        break;
      case StructureKind::Comodule:
        rep.merge(check_comodule(*s.comodule, opt));
        if (suite == Suite::All && s.comodule->rho) {
          rep.merge(check_comodule_cotranslation(*s.comodule, *s.comodule->rho));
        }
        break;
    }
    if (suite == Suite::All) rep.merge(beta_suite(s));
  }
  rep.suite = suite_name(suite);
  rep.digest = structure_digest(s);
  rep.elapsed_ms = timer.ms();
  return rep;
}

CheckReport run_dualize(const Structure& s, const std::string& out_path) {
  Timer timer;
  CheckReport rep;
  rep.suite = "dualize";
  rep.digest = structure_digest(s);
  try {
    Structure dual;
    nlohmann::json pairing;
    switch (s.kind) {
      case StructureKind::Algebra: {
        auto [d, w] = dualize_algebra(*s.algebra);
        dual = Structure::of(std::move(d));
        pairing = w.to_json();
        break;
      }
      case StructureKind::Coalgebra: {
        auto [d, w] = dualize_coalgebra(*s.coalgebra);
        dual = Structure::of(std::move(d));
        pairing = w.to_json();
        break;
      }
      case StructureKind::Module: {
        auto [d, w] = dualize_module(*s.module);
        dual = Structure::of(std::move(d));
        pairing = w.to_json();
        break;
      }
      case StructureKind::Comodule: {
        auto [d, w] = dualize_comodule(*s.comodule);
        dual = Structure::of(std::move(d));
        pairing = w.to_json();
        break;
      }
    }
    const GradedSpace& v = base_space(s);
    rep.add(parity_precondition(s.algebra ? s.algebra->beta : s.coalgebra->beta,
                                s.algebra ? s.algebra->gamma0 : s.coalgebra->gamma0, {&v}));
    dual.conductor = std::max(dual.conductor, s.conductor);
    save_structure(dual, out_path);
    const std::string pairing_path = out_path + ".pairing.json";
    write_text(pairing_path, render_json(pairing));
    rep.add(info("dual_written", out_path,
                 {{"kind", kind_name(dual.kind)}, {"digest", structure_digest(dual)}, {"pairing", pairing_path}}));
  } catch (const DualityRefusal& e) {
    rep.add(e.result());
  }
  rep.elapsed_ms = timer.ms();
  return rep;
}

CheckReport run_c2(const Structure& s, bool poisson, const std::string& out_path) {
  Timer timer;
  CheckReport rep;
  rep.suite = poisson ? "c2-poisson" : "c2";
  rep.digest = structure_digest(s);
  nlohmann::json out;
  out["schema"] = "vakit-c2/1";
  out["source_digest"] = rep.digest;
  try {
    switch (s.kind) {
      case StructureKind::Algebra: {
        rep.merge(lemma_higher_modes(*s.algebra));
        C2Algebra c = c2_algebra(*s.algebra);
        rep.merge(c.well_defined);
        rep.merge(check_gamma_algebra(c.poisson));
        rep.merge(check_beta_commutative(c.poisson));
        if (poisson) rep.merge(check_poisson(c.poisson));
        out["kind"] = "poisson-algebra";
        out["structure"] = poisson_json(c.poisson);
        break;
      }
      case StructureKind::Coalgebra: {
        rep.merge(lemma_higher_modes(*s.coalgebra));
        CoC2Coalgebra c = co_c2_coalgebra(*s.coalgebra);
        rep.merge(c.containment);
        rep.merge(check_gamma_coalgebra(c.copoisson));
        rep.merge(check_beta_cocommutative(c.copoisson));
        if (poisson) rep.merge(check_copoisson(c.copoisson));
        out["kind"] = "copoisson-coalgebra";
        out["structure"] = copoisson_json(c.copoisson);
        break;
      }
      case StructureKind::Module: {
        rep.merge(lemma_higher_modes(*s.module));
        C2Algebra base = c2_algebra(*s.algebra);
        C2Module c = c2_module(base, *s.module);
        rep.merge(c.well_defined);
        CheckReport full = check_poisson_module(c.poisson);
        rep.merge(poisson ? full : select(full, {"module_associativity", "module_unit"}));
        const GradedSpace& b = *base.poisson.carrier;
        const GradedSpace& m = *c.poisson.carrier;
        out["kind"] = "poisson-module";
        out["base"] = poisson_json(base.poisson);
        out["structure"] = {{"carrier", space_json(m)},
                            {"action", bilinear_json(c.poisson.action, b, m, m)},
                            {"lie_action", bilinear_json(c.poisson.lie_action, b, m, m)}};
        break;
      }
      case StructureKind::Comodule: {
        rep.merge(lemma_higher_modes(*s.comodule));
        CoC2Coalgebra base = co_c2_coalgebra(*s.coalgebra);
        CoC2Comodule c = co_c2_comodule(base, *s.comodule);
        rep.merge(c.containment);
        CheckReport full = check_copoisson_comodule(c.copoisson);
        rep.merge(poisson ? full : select(full, {"comodule_coassociativity", "comodule_counit"}));
        const GradedSpace& b = *base.copoisson.carrier;
        const GradedSpace& m = *c.copoisson.carrier;
        GradedSpace mb = tensor(m, b);
        out["kind"] = "copoisson-comodule";
        out["base"] = copoisson_json(base.copoisson);
        out["structure"] = {{"carrier", space_json(m)},
                            {"coaction", linear_json(c.copoisson.coaction, m, mb)},
                            {"lie_coaction", linear_json(c.copoisson.lie_coaction, m, mb)}};
        break;
      }
    }
    write_text(out_path, render_json(out));
    rep.add(info("c2_written", out_path, {{"kind", out["kind"]}, {"digest", digest_hex(out.dump())}}));
  } catch (const C2Error& e) {
    rep.add(e.result());
  }
  rep.suite = poisson ? "c2-poisson" : "c2";
  rep.elapsed_ms = timer.ms();
  return rep;
}

CheckReport run_iso_check(const Structure& s, IsoTheorem t) {
  Timer timer;
  need_kind(s, iso_theorem_kind(t), "iso-check " + iso_theorem_name(t));
  IsoResult r;
  switch (t) {
    case IsoTheorem::Poisson: r = poisson_duality_iso(*s.algebra); break;
    case IsoTheorem::CoPoisson: r = copoisson_duality_iso(*s.coalgebra); break;
    case IsoTheorem::PoissonModule: r = poisson_duality_iso_module(*s.module); break;
    case IsoTheorem::CoPoissonComodule: r = copoisson_duality_iso_comodule(*s.comodule); break;
  }
  CheckReport rep = r.report;
  if (r.map.source && r.map.target) {
    AxiomResult m = info("iso_matrices", "per-degree blocks of the isomorphism", graded_map_json(r.map));
    m.anchor = rep.results.empty() ? "io" : rep.results.front().anchor;
    rep.add(m);
  }
  rep.suite = "iso-" + iso_theorem_name(t);
  rep.digest = structure_digest(s);
  rep.elapsed_ms = timer.ms();
  return rep;
}

CheckReport run_example(const std::string& name, const std::string& out_path) {
  Timer timer;
  bool known = false;
  for (const auto& n : example_names()) known = known || n == name;
  if (!known) {
    std::string list;
    for (const auto& n : example_names()) list += (list.empty() ? "" : ", ") + n;
    throw UsageError("unknown example '" + name + "'; known: " + list);
  }
  Structure s = make_example(name);
  save_structure(s, out_path);
  CheckReport rep;
  rep.suite = "example";
  rep.digest = structure_digest(s);
  rep.add(info("example_written", out_path, {{"name", name}, {"kind", kind_name(s.kind)}}));
  rep.elapsed_ms = timer.ms();
  return rep;
}

std::vector<Identity> identities_for(const Structure& s, const CheckOptions& opt) {
  std::vector<Identity> out;
  auto append = [&out](std::vector<Identity> v) {
    for (auto& i : v) out.push_back(std::move(i));
  };
  switch (s.kind) {
    case StructureKind::Algebra: append(algebra_identities(*s.algebra, opt)); break;
    case StructureKind::Coalgebra: append(coalgebra_identities(*s.coalgebra, opt)); break;
    case StructureKind::Module:
      append(module_identities(*s.module, opt));
      append(algebra_identities(*s.algebra, opt));
      break;
    case StructureKind::Comodule:
      append(comodule_identities(*s.comodule, opt));
      append(coalgebra_identities(*s.coalgebra, opt));
      break;
  }
  return out;
}

CheckReport run_replay(const Structure& s, const nlohmann::json& input) {
  Timer timer;
  std::string id;
  nlohmann::json wj;
  if (input.contains("axioms")) {
    for (const auto& a : input.at("axioms")) {
      if (a.value("verdict", "") == "fail" && a.contains("witness")) {
        id = a.at("id").get<std::string>();
        wj = a.at("witness");
        break;
      }
    }
    if (id.empty()) throw UsageError("report contains no witnessed failure");
  } else if (input.contains("id") && input.contains("witness")) {
    id = input.at("id").get<std::string>();
    wj = input.at("witness");
  } else {
    throw UsageError("replay input needs a report or an object with \"id\" and \"witness\"");
  }
  Witness w;
  try {
    w = witness_from_json(wj);
  } catch (const std::exception& e) {
    throw UsageError(std::string("malformed witness: ") + e.what());
  }
  const auto ids = identities_for(s);
  const Identity* target = nullptr;
  for (const auto& i : ids) {
    if (i.id == id) target = &i;
  }
  if (!target) throw UsageError("axiom '" + id + "' is not replayable on a " + kind_name(s.kind) + " file");
  Sides sides;
  try {
    sides = replay(*target, w);
  } catch (const std::exception& e) {
    throw UsageError(std::string("witness does not fit the structure: ") + e.what());
  }
  AxiomResult r;
  r.id = target->id;
  r.anchor = target->anchor;
  r.cases = 1;
  Witness got = w;
  got.lhs = target->output->render(sides.lhs);
  got.rhs = target->output->render(sides.rhs);
  r.verdict = sides.lhs == sides.rhs ? Verdict::Pass : Verdict::Fail;
  r.witness = got;
  const bool reproduced = r.verdict == Verdict::Fail && got.lhs == w.lhs && got.rhs == w.rhs;
  r.detail = reproduced ? "counterexample reproduced" : "counterexample not reproduced";
  r.data = {{"reproduced", reproduced}};
  CheckReport rep;
  rep.suite = "replay";
  rep.digest = structure_digest(s);
  rep.add(r);
  rep.elapsed_ms = timer.ms();
  return rep;
}

void add_input_warnings(CheckReport& rep, const std::vector<std::string>& warnings) {
  std::vector<AxiomResult> head;
  for (const auto& w : warnings) head.push_back(info("input_warning", w));
  rep.results.insert(rep.results.begin(), head.begin(), head.end());
}

nlohmann::json error_json(const std::string& kind, const std::string& message) {
  return {{"schema", "vakit-report/1"}, {"verdict", "error"}, {"error", {{"kind", kind}, {"message", message}}}};
}

std::string render_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace vakit
