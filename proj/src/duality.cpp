#include "vakit/duality.hpp"

#include <stdexcept>

namespace vakit {

namespace {

DualityWitness make_witness(const std::string& src, const std::string& dst, const SpacePtr& v, const SpacePtr& d) {
  DualityWitness w;
  w.source_id = src;
  w.target_id = dst;
  w.source = v;
  w.dual = d;
  for (const auto& g : v->support()) {
    auto comp = v->component(g);
    Matrix m(comp.size(), comp.size());
    for (Index r = 0; r < comp.size(); ++r) {
      for (Index c = 0; c < comp.size(); ++c) m.at(r, c) = Scalar(r == c ? 1 : 0);
    }
    w.pairing.emplace(g, std::move(m));
  }
  return w;
}

void require_parity(const BetaSpec& beta, const GroupElement& g0, const std::vector<const GradedSpace*>& spaces) {
  AxiomResult r = parity_precondition(beta, g0, spaces);
  if (r.verdict != Verdict::Pass) throw DualityRefusal(r);
}

OpFamily transpose_bilinear(const OpFamily& ops, Index dA, Index dB) {
  OpFamily out;
  for (const auto& [n, f] : ops) out.emplace(n, transpose_bilinear(f, dA, dB));
  return out;
}

OpFamily transpose_cobilinear(const OpFamily& ops, Index dA, Index dB) {
  OpFamily out;
  for (const auto& [n, f] : ops) out.emplace(n, transpose_cobilinear(f, dA, dB));
  return out;
}

SpacePtr dual_of(const SpacePtr& v) { return make_space(restricted_dual(*v)); }

}  // namespace

LinearMap transpose_bilinear(const LinearMap& f, Index dA, Index dB) {
  const Index dC = f.target_dim();
  LinearMap t(dC, dB * dA);
  for (Index a = 0; a < dA; ++a) {
    for (Index b = 0; b < dB; ++b) {
      for (const auto& [k, c] : f.column(a * dB + b)) t.add_entry(b * dA + a, k, c);
    }
  }
  return t;
}

LinearMap transpose_cobilinear(const LinearMap& f, Index dA, Index dB) {
  const Index dC = f.source_dim();
  LinearMap t(dA * dB, dC);
  for (Index k = 0; k < dC; ++k) {
    for (const auto& [idx, c] : f.column(k)) t.add_entry(k, (idx % dA) * dB + idx / dA, c);
  }
  return t;
}

nlohmann::json DualityWitness::to_json() const {
  nlohmann::json j;
  j["source"] = source_id;
  j["target"] = target_id;
  j["convention"] = "<f (x) g, u (x) v> = g(u) f(v)";
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& [g, m] : pairing) {
    nlohmann::json b;
    b["degree"] = g.str();
    nlohmann::json rows = nlohmann::json::array();
    auto comp = source->component(g);
    nlohmann::json src = nlohmann::json::array();
    nlohmann::json dst = nlohmann::json::array();
    for (Index i : comp) {
      src.push_back(source->label(i));
      dst.push_back(dual->label(i));
    }
    for (Index r = 0; r < m.rows; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Index c = 0; c < m.cols; ++c) row.push_back(m.at(r, c).str());
      rows.push_back(row);
    }
    b["dual_basis"] = dst;
    b["basis"] = src;
    b["matrix"] = rows;
    blocks.push_back(b);
  }
  j["pairing"] = blocks;
  return j;
}

AxiomResult parity_precondition(const BetaSpec& beta, const GroupElement& gamma0,
                                const std::vector<const GradedSpace*>& spaces) {
  AxiomResult r = check_beta_relation(beta, RelationKind::Parity, support_box(spaces), gamma0);
  r.id = "parity_precondition";
  if (r.verdict == Verdict::Fail) {
    r.verdict = Verdict::Refused;
    r.detail = "beta fails parity on the support box";
  }
  return r;
}

std::pair<VertexCoalgebraData, DualityWitness> dualize_algebra(const VertexAlgebraData& a,
                                                               const std::string& source_id) {
  require_parity(a.beta, a.gamma0, {a.space.get()});
  const Index d = a.space->dim();
  VertexCoalgebraData c;
  c.space = dual_of(a.space);
  c.gamma0 = a.gamma0;
  c.beta = a.beta;
  c.window = a.window;
  c.coops = transpose_bilinear(a.ops, d, d);
  c.covacuum = a.vacuum;
  return {c, make_witness(source_id, source_id + "'", a.space, c.space)};
}

std::pair<VertexAlgebraData, DualityWitness> dualize_coalgebra(const VertexCoalgebraData& c,
                                                               const std::string& source_id) {
  require_parity(c.beta, c.gamma0, {c.space.get()});
  const Index d = c.space->dim();
  VertexAlgebraData a;
  a.space = dual_of(c.space);
  a.gamma0 = c.gamma0;
  a.beta = c.beta;
  a.window = c.window;
  a.ops = transpose_cobilinear(c.coops, d, d);
  a.vacuum = c.covacuum;
  return {a, make_witness(source_id, source_id + "'", c.space, a.space)};
}

std::pair<ComoduleData, DualityWitness> dualize_module(const ModuleData& m, const std::string& source_id) {
  const auto& base = *m.algebra;
  require_parity(base.beta, base.gamma0, {base.space.get(), m.mspace.get()});
  ComoduleData out;
  out.coalgebra = std::make_shared<const VertexCoalgebraData>(dualize_algebra(base).first);
  out.mspace = dual_of(m.mspace);
  out.window = m.window;
  out.comops = transpose_bilinear(m.mops, base.space->dim(), m.mspace->dim());
  if (m.d_m) out.cod_m = m.d_m->transpose();
  if (m.omega) out.rho = *m.omega;
  return {out, make_witness(source_id, source_id + "'", m.mspace, out.mspace)};
}

std::pair<ModuleData, DualityWitness> dualize_comodule(const ComoduleData& m, const std::string& source_id) {
  const auto& base = *m.coalgebra;
  require_parity(base.beta, base.gamma0, {base.space.get(), m.mspace.get()});
  ModuleData out;
  out.algebra = std::make_shared<const VertexAlgebraData>(dualize_coalgebra(base).first);
  out.mspace = dual_of(m.mspace);
  out.window = m.window;
  out.mops = transpose_cobilinear(m.comops, base.space->dim(), m.mspace->dim());
  if (m.cod_m) out.d_m = m.cod_m->transpose();
  if (m.rho) out.omega = *m.rho;
  return {out, make_witness(source_id, source_id + "'", m.mspace, out.mspace)};
}

GradedMap double_dual_identify(const SpacePtr& v) {
  GradedMap f;
  f.source = v;
  f.target = make_space(restricted_dual(restricted_dual(*v)));
  f.degree = GroupElement::zero(v->spec());
  f.map = LinearMap::identity(v->dim());
  return f;
}

namespace {

void check_relabel(const GradedSpace& dd, const GradedSpace& v) {
  if (dd.dim() != v.dim()) throw std::invalid_argument("double dual has a different dimension");
  for (Index i = 0; i < v.dim(); ++i) {
    if (dd.label(i) != v.label(i) + "''" || !(dd.degree(i) == v.degree(i))) {
      throw std::invalid_argument("double dual basis element '" + dd.label(i) + "' does not match '" + v.label(i) +
                                  "'");
    }
  }
}

}  // namespace

VertexAlgebraData relabel_double_dual(const VertexAlgebraData& dd, const SpacePtr& original) {
  check_relabel(*dd.space, *original);
  VertexAlgebraData a = dd;
  a.space = original;
  return a;
}

VertexCoalgebraData relabel_double_dual(const VertexCoalgebraData& dd, const SpacePtr& original) {
  check_relabel(*dd.space, *original);
  VertexCoalgebraData c = dd;
  c.space = original;
  return c;
}

namespace {

bool same_ops(const OpFamily& a, const OpFamily& b) {
  auto nonzero = [](const OpFamily& f) {
    OpFamily out;
    for (const auto& [n, m] : f) {
      if (!m.is_zero()) out.emplace(n, m);
    }
    return out;
  };
  return nonzero(a) == nonzero(b);
}

}  // namespace

bool same_structure(const VertexAlgebraData& a, const VertexAlgebraData& b) {
  return *a.space == *b.space && a.gamma0 == b.gamma0 && a.beta == b.beta && a.window == b.window &&
         same_ops(a.ops, b.ops) && a.vacuum == b.vacuum;
}

bool same_structure(const VertexCoalgebraData& a, const VertexCoalgebraData& b) {
  return *a.space == *b.space && a.gamma0 == b.gamma0 && a.beta == b.beta && a.window == b.window &&
         same_ops(a.coops, b.coops) && a.covacuum == b.covacuum;
}

}  // namespace vakit
