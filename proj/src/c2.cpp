#include "vakit/c2.hpp"

#include <random>
#include <set>

namespace vakit {

namespace {

const SparseVector kZero;

SparseVector bil(const LinearMap& f, const SparseVector& x, const SparseVector& y, Index dy) {
  SparseVector out;
  for (const auto& [i, a] : x) {
    for (const auto& [j, b] : y) out.add_scaled(f.column(i * dy + j), a * b);
  }
  return out;
}

const LinearMap* window_op(const OpFamily& ops, const Window& w, std::int64_t n) {
  if (!w.contains(n)) return nullptr;
  auto it = ops.find(n);
  return it == ops.end() ? nullptr : &it->second;
}

SparseVector e(Index i) { return SparseVector::basis(i); }

GradedSubspace span_columns(const SpacePtr& space, const LinearMap* f) {
  std::vector<SparseVector> cols;
  if (f != nullptr) {
    for (Index j = 0; j < f->source_dim(); ++j) cols.push_back(f->column(j));
  }
  return GradedSubspace::span(space, cols);
}

GradedSubspace kernel_of(const SpacePtr& space, const LinearMap* f, Index target_dim) {
  if (f == nullptr) return GradedSubspace::whole(space);
  GradedMap g;
  g.source = space;
  g.map = *f;
  (void)target_dim;
  return kernel(g);
}

AxiomResult verify_or_throw(const Identity& id) {
  AxiomResult r = verify(id);
  if (r.verdict == Verdict::Fail) throw C2Error(r);
  return r;
}

/// Lift of each carrier basis vector to its representative.
LinearMap lift_map(const Quotient& q) {
  LinearMap s(q.carrier->dim(), q.sub.ambient()->dim());
  for (Index i = 0; i < q.reps.size(); ++i) s.set_column(i, e(q.reps[i]));
  return s;
}

std::vector<ExponentTuple> modes_below(const Window& w) {
  std::vector<ExponentTuple> out;
  if (w.empty()) return out;
  for (std::int64_t n = 0; -2 - n >= w.lo; ++n) {
    if (-2 - n <= w.hi) out.push_back({n});
  }
  return out;
}

CheckReport single(const std::string& suite, AxiomResult r) {
  CheckReport rep;
  rep.suite = suite;
  rep.add(std::move(r));
  return rep;
}

AxiomResult refused(const std::string& id, const AxiomResult& why) {
  AxiomResult r;
  r.id = id;
  r.anchor = "beta_relation_hypothesis";
  r.verdict = Verdict::Refused;
  r.detail = "beta fails " + why.id;
  r.witness = why.witness;
  return r;
}

/// Multiplicative relation on the support box, as Pass or Refused.
AxiomResult multiplicative_precondition(const std::string& id, const BetaSpec& beta, const GroupElement& g0,
                                        const std::vector<const GradedSpace*>& spaces) {
  AxiomResult r = check_beta_relation(beta, RelationKind::Multiplicative, support_box(spaces), g0);
  if (r.verdict == Verdict::Fail) return refused(id, r);
  r.id = id;
  r.anchor = "beta_relation_hypothesis";
  return r;
}

GroupElement zero_of(const SpacePtr& s) { return GroupElement::zero(s->spec()); }

}  // namespace

LinearMap kron(const LinearMap& f, const LinearMap& g) {
  const Index dB = g.source_dim();
  const Index dB2 = g.target_dim();
  LinearMap out(f.source_dim() * dB, f.target_dim() * dB2);
  for (Index a = 0; a < f.source_dim(); ++a) {
    for (Index b = 0; b < dB; ++b) out.set_column(a * dB + b, tensor_vectors(f.column(a), g.column(b), dB2));
  }
  return out;
}

// ---------------------------------------------------------------- subspaces

GradedSubspace c2_subspace(const VertexAlgebraData& a) {
  return span_columns(a.space, window_op(a.ops, a.window, -2));
}

GradedSubspace c2_subspace_module(const ModuleData& m) {
  return span_columns(m.mspace, window_op(m.mops, m.window, -2));
}

GradedSubspace co_c2_subspace(const VertexCoalgebraData& c) {
  return kernel_of(c.space, window_op(c.coops, c.window, -2), c.space->dim() * c.space->dim());
}

GradedSubspace co_c2_subspace_comodule(const ComoduleData& m) {
  return kernel_of(m.mspace, window_op(m.comops, m.window, -2), m.mspace->dim() * m.coalgebra->space->dim());
}

// ---------------------------------------------------------------- higher modes

namespace {

CheckReport higher_modes_image(const std::string& id, const SpacePtr& left, const SpacePtr& right,
                               const OpFamily& ops, const Window& w, const GradedSubspace& c2) {
  Identity ident;
  ident.id = id;
  ident.anchor = "higher_modes_in_c2";
  ident.exponent_names = {"n"};
  ident.exponents = modes_below(w);
  ident.slots = {left, right};
  ident.output = right;
  const Index dr = right->dim();
  ident.eval = [ops, w, c2, dr](const ExponentTuple& ex, const std::vector<Index>& b) {
    Sides s;
    const LinearMap* f = window_op(ops, w, -2 - ex[0]);
    if (f != nullptr) s.lhs = c2.reduce(f->column(b[0] * dr + b[1]));
    return s;
  };
  return single("higher_modes", verify(ident));
}

CheckReport higher_modes_kernel(const std::string& id, const GradedSubspace& k, const OpFamily& ops,
                                const Window& w, const SpacePtr& out) {
  Identity ident;
  ident.id = id;
  ident.anchor = "kernel_in_higher_kernels";
  ident.exponent_names = {"n"};
  ident.exponents = modes_below(w);
  ident.slots = {make_space(k.as_space())};
  ident.output = out;
  auto basis = k.basis();
  ident.eval = [ops, w, basis](const ExponentTuple& ex, const std::vector<Index>& b) {
    Sides s;
    const LinearMap* f = window_op(ops, w, -2 - ex[0]);
    if (f != nullptr) s.lhs = f->apply(basis[b[0]]);
    return s;
  };
  return single("higher_modes", verify(ident));
}

}  // namespace

CheckReport lemma_higher_modes(const VertexAlgebraData& a) {
  return higher_modes_image("higher_modes", a.space, a.space, a.ops, a.window, c2_subspace(a));
}

CheckReport lemma_higher_modes(const ModuleData& m) {
  return higher_modes_image("higher_modes_mod", m.algebra->space, m.mspace, m.mops, m.window, c2_subspace_module(m));
}

CheckReport lemma_higher_modes(const VertexCoalgebraData& c) {
  return higher_modes_kernel("higher_comodes", co_c2_subspace(c), c.coops, c.window,
                             make_space(tensor(*c.space, *c.space)));
}

CheckReport lemma_higher_modes(const ComoduleData& m) {
  return higher_modes_kernel("higher_comodes_mod", co_c2_subspace_comodule(m), m.comops, m.window,
                             make_space(tensor(*m.mspace, *m.coalgebra->space)));
}

// ---------------------------------------------------------------- C2 algebra

LinearMap random_section(const Quotient& q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-3, 3);
  LinearMap s = lift_map(q);
  const auto& amb = *q.sub.ambient();
  for (Index i = 0; i < q.reps.size(); ++i) {
    auto it = q.sub.components().find(amb.degree(q.reps[i]));
    if (it == q.sub.components().end()) continue;
    SparseVector col = s.column(i);
    for (const auto& v : it->second.vectors()) col.add_scaled(v, Scalar(dist(rng)));
    s.set_column(i, col);
  }
  return s;
}

PoissonAlgebraData induce_algebra(const VertexAlgebraData& a, const Quotient& q, const LinearMap& section) {
  PoissonAlgebraData p;
  p.carrier = q.carrier;
  p.beta = a.beta;
  p.gamma0 = a.gamma0;
  const Index d = a.space->dim();
  const Index r = q.carrier->dim();
  const LinearMap* y1 = window_op(a.ops, a.window, -1);
  const LinearMap* y0 = window_op(a.ops, a.window, 0);
  p.product = LinearMap(r * r, r);
  p.bracket = LinearMap(r * r, r);
  for (Index i = 0; i < r; ++i) {
    for (Index j = 0; j < r; ++j) {
      if (y1) p.product.set_column(i * r + j, q.project(bil(*y1, section.column(i), section.column(j), d)));
      if (y0) p.bracket.set_column(i * r + j, q.project(bil(*y0, section.column(i), section.column(j), d)));
    }
  }
  p.unit = q.project(a.vacuum);
  return p;
}

namespace {

/// Y_n (x) preserves C2 in the given slot, for n in {-1, 0}.
Identity preserves(const std::string& id, const SpacePtr& left, const SpacePtr& right, const OpFamily& ops,
                   const Window& w, const std::vector<SparseVector>& left_vecs,
                   const std::vector<SparseVector>& right_vecs, Index right_dim, const GradedSubspace& target) {
  Identity ident;
  ident.id = id;
  ident.anchor = "c2_well_defined";
  ident.exponent_names = {"n"};
  ident.exponents = {{-1}, {0}};
  ident.slots = {left, right};
  ident.output = target.ambient();
  ident.eval = [=](const ExponentTuple& ex, const std::vector<Index>& b) {
    Sides s;
    const LinearMap* f = window_op(ops, w, ex[0]);
    if (f != nullptr) s.lhs = target.reduce(bil(*f, left_vecs[b[0]], right_vecs[b[1]], right_dim));
    return s;
  };
  return ident;
}

std::vector<SparseVector> unit_vectors(Index n) {
  std::vector<SparseVector> out;
  for (Index i = 0; i < n; ++i) out.push_back(e(i));
  return out;
}

}  // namespace

C2Algebra c2_algebra(const VertexAlgebraData& a) {
  C2Algebra out;
  GradedSubspace c2 = c2_subspace(a);
  out.quotient = quotient(c2);
  out.well_defined.suite = "c2_well_defined";
  auto cspace = make_space(c2.as_space());
  auto cb = c2.basis();
  auto vb = unit_vectors(a.space->dim());
  out.well_defined.add(
      verify_or_throw(preserves("c2_right_slot", a.space, cspace, a.ops, a.window, vb, cb, a.space->dim(), c2)));
  out.well_defined.add(
      verify_or_throw(preserves("c2_left_slot", cspace, a.space, a.ops, a.window, cb, vb, a.space->dim(), c2)));
  out.poisson = induce_algebra(a, out.quotient, lift_map(out.quotient));
  return out;
}

C2Module c2_module(const C2Algebra& base, const ModuleData& m) {
  C2Module out;
  const auto& a = *m.algebra;
  GradedSubspace c2m = c2_subspace_module(m);
  out.quotient = quotient(c2m);
  out.well_defined.suite = "c2_module_well_defined";
  auto mb = unit_vectors(m.mspace->dim());
  auto vb = unit_vectors(a.space->dim());
  auto cmb = c2m.basis();
  auto cvb = base.quotient.sub.basis();
  out.well_defined.add(verify_or_throw(preserves("c2_mod_right_slot", a.space, make_space(c2m.as_space()), m.mops,
                                                 m.window, vb, cmb, m.mspace->dim(), c2m)));
  out.well_defined.add(verify_or_throw(preserves("c2_mod_left_slot", make_space(base.quotient.sub.as_space()),
                                                 m.mspace, m.mops, m.window, cvb, mb, m.mspace->dim(), c2m)));
  auto p = std::make_shared<PoissonAlgebraData>(base.poisson);
  out.poisson.base = p;
  out.poisson.carrier = out.quotient.carrier;
  const Index rv = base.quotient.carrier->dim();
  const Index rm = out.quotient.carrier->dim();
  const Index dm = m.mspace->dim();
  LinearMap sv = lift_map(base.quotient);
  LinearMap sm = lift_map(out.quotient);
  const LinearMap* y1 = window_op(m.mops, m.window, -1);
  const LinearMap* y0 = window_op(m.mops, m.window, 0);
  out.poisson.action = LinearMap(rv * rm, rm);
  out.poisson.lie_action = LinearMap(rv * rm, rm);
  for (Index i = 0; i < rv; ++i) {
    for (Index j = 0; j < rm; ++j) {
      if (y1) out.poisson.action.set_column(i * rm + j, out.quotient.project(bil(*y1, sv.column(i), sm.column(j), dm)));
      if (y0) {
        out.poisson.lie_action.set_column(i * rm + j, out.quotient.project(bil(*y0, sv.column(i), sm.column(j), dm)));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- C2 coalgebra

namespace {

/// Coordinates of x in K1 (x) K2 read at pivot pairs.
SparseVector tensor_coordinates(const SparseVector& x, const std::vector<SparseVector>& k1,
                                const std::vector<SparseVector>& k2, Index d2) {
  SparseVector out;
  const Index n2 = k2.size();
  for (Index s = 0; s < k1.size(); ++s) {
    for (Index t = 0; t < n2; ++t) {
      Scalar c = x.get(k1[s].last_index() * d2 + k2[t].last_index());
      if (!c.is_zero()) out.add(s * n2 + t, c);
    }
  }
  return out;
}

Identity kernel_containment(const std::string& id, const SpacePtr& kspace, const std::vector<SparseVector>& kb,
                            const OpFamily& ops, const Window& w, const GradedSubspace& target) {
  Identity ident;
  ident.id = id;
  ident.anchor = "kernel_coproduct_containment";
  ident.exponent_names = {"n"};
  ident.exponents = {{-1}, {0}};
  ident.slots = {kspace};
  ident.output = target.ambient();
  ident.eval = [=](const ExponentTuple& ex, const std::vector<Index>& b) {
    Sides s;
    const LinearMap* f = window_op(ops, w, ex[0]);
    if (f != nullptr) s.lhs = target.reduce(f->apply(kb[b[0]]));
    return s;
  };
  return ident;
}

AxiomResult intersection_result(const std::string& id, const GradedSubspace& k1, const GradedSubspace& k2,
                                const SpacePtr& amb) {
  AxiomResult r;
  r.id = id;
  r.anchor = "kernel_tensor_intersection";
  GradedSubspace expected = tensor_subspace(k1, k2, amb);
  GradedSubspace got = intersect_tensor(k1, k2, amb);
  r.cases = 1;
  if (!(expected == got)) {
    r.verdict = Verdict::Fail;
    r.detail = "intersection has dimension " + std::to_string(got.dim()) + ", tensor product " +
               std::to_string(expected.dim());
  }
  r.data = {{"dimension", got.dim()}};
  return r;
}

LinearMap restricted_coop(const LinearMap* f, const std::vector<SparseVector>& src,
                          const std::vector<SparseVector>& k1, const std::vector<SparseVector>& k2, Index d2) {
  LinearMap out(src.size(), k1.size() * k2.size());
  if (f == nullptr) return out;
  for (Index r = 0; r < src.size(); ++r) out.set_column(r, tensor_coordinates(f->apply(src[r]), k1, k2, d2));
  return out;
}

}  // namespace

CoC2Coalgebra co_c2_coalgebra(const VertexCoalgebraData& c) {
  CoC2Coalgebra out;
  out.kernel = co_c2_subspace(c);
  const Index d = c.space->dim();
  auto vv = make_space(tensor(*c.space, *c.space));
  auto kb = out.kernel.basis();
  auto kspace = make_space(out.kernel.as_space());
  out.containment.suite = "kernel_containment";
  out.containment.add(intersection_result("kernel_tensor_intersection", out.kernel, out.kernel, vv));
  GradedSubspace kk = tensor_subspace(out.kernel, out.kernel, vv);
  out.containment.add(verify_or_throw(kernel_containment("kernel_coproducts", kspace, kb, c.coops, c.window, kk)));
  auto& p = out.copoisson;
  p.carrier = kspace;
  p.beta = c.beta;
  p.gamma0 = c.gamma0;
  p.coproduct = restricted_coop(window_op(c.coops, c.window, -1), kb, kb, kb, d);
  p.cobracket = restricted_coop(window_op(c.coops, c.window, 0), kb, kb, kb, d);
  for (Index r = 0; r < kb.size(); ++r) {
    Scalar v(0);
    for (const auto& [i, x] : kb[r]) v += x * c.covacuum.get(i);
    if (!v.is_zero()) p.counit.add(r, v);
  }
  return out;
}

CoC2Comodule co_c2_comodule(const CoC2Coalgebra& base, const ComoduleData& m) {
  CoC2Comodule out;
  out.kernel = co_c2_subspace_comodule(m);
  const Index dv = m.coalgebra->space->dim();
  auto mv = make_space(tensor(*m.mspace, *m.coalgebra->space));
  auto kb = out.kernel.basis();
  auto vb = base.kernel.basis();
  auto kspace = make_space(out.kernel.as_space());
  out.containment.suite = "kernel_containment_mod";
  out.containment.add(intersection_result("kernel_tensor_intersection_mod", out.kernel, base.kernel, mv));
  GradedSubspace kk = tensor_subspace(out.kernel, base.kernel, mv);
  out.containment.add(
      verify_or_throw(kernel_containment("kernel_coactions", kspace, kb, m.comops, m.window, kk)));
  auto& p = out.copoisson;
  p.base = std::make_shared<CoPoissonCoalgebraData>(base.copoisson);
  p.carrier = kspace;
  p.coaction = restricted_coop(window_op(m.comops, m.window, -1), kb, kb, vb, dv);
  p.lie_coaction = restricted_coop(window_op(m.comops, m.window, 0), kb, kb, vb, dv);
  return out;
}

// ---------------------------------------------------------------- Poisson checkers

namespace {

struct Carrier {
  SpacePtr x;
  BetaTable beta;
  Carrier(const SpacePtr& s, const BetaSpec& b) : x(s), beta(b, s->support()) {}
  Scalar operator()(Index i, Index j) const { return beta(x->degree(i), x->degree(j)); }
  Index d() const { return x->dim(); }
};

Identity pair_identity(const std::string& id, const std::string& anchor, const SpacePtr& a, const SpacePtr& b,
                       const SpacePtr& out, std::function<Sides(Index, Index)> f) {
  Identity ident;
  ident.id = id;
  ident.anchor = anchor;
  ident.slots = {a, b};
  ident.output = out;
  ident.eval = [f](const ExponentTuple&, const std::vector<Index>& s) { return f(s[0], s[1]); };
  return ident;
}

Identity triple_identity(const std::string& id, const std::string& anchor, const SpacePtr& a, const SpacePtr& b,
                         const SpacePtr& c, const SpacePtr& out, std::function<Sides(Index, Index, Index)> f) {
  Identity ident;
  ident.id = id;
  ident.anchor = anchor;
  ident.slots = {a, b, c};
  ident.output = out;
  ident.eval = [f](const ExponentTuple&, const std::vector<Index>& s) { return f(s[0], s[1], s[2]); };
  return ident;
}

Identity single_identity(const std::string& id, const std::string& anchor, const SpacePtr& a, const SpacePtr& out,
                         std::function<Sides(Index)> f) {
  Identity ident;
  ident.id = id;
  ident.anchor = anchor;
  ident.slots = {a};
  ident.output = out;
  ident.eval = [f](const ExponentTuple&, const std::vector<Index>& s) { return f(s[0]); };
  return ident;
}

CheckReport run(const std::string& suite, const std::vector<Identity>& ids) {
  CheckReport rep;
  rep.suite = suite;
  for (const auto& id : ids) rep.add(verify(id));
  return rep;
}

/// xi(u (x) v (x) w) = beta(u,v) beta(u,w) v (x) w (x) u on X^3.
SparseVector xi(const Carrier& c, const SparseVector& x) {
  SparseVector out;
  const Index d = c.d();
  for (const auto& [idx, v] : x) {
    Index w = idx % d;
    Index b = (idx / d) % d;
    Index u = idx / (d * d);
    out.add((b * d + w) * d + u, v * c(u, b) * c(u, w));
  }
  return out;
}

/// (id_L (x) T^beta) on L (x) X (x) X.
SparseVector swap23(const Carrier& c, const SparseVector& x) {
  SparseVector out;
  const Index d = c.d();
  for (const auto& [idx, v] : x) {
    Index z = idx % d;
    Index y = (idx / d) % d;
    Index p = idx / (d * d);
    out.add((p * d + z) * d + y, v * c(y, z));
  }
  return out;
}

SpacePtr tensor3(const SpacePtr& a, const SpacePtr& b, const SpacePtr& c) {
  return make_space(tensor(tensor(*a, *b), *c));
}

std::vector<Identity> gamma_algebra_identities(const PoissonAlgebraData& p) {
  const auto& X = p.carrier;
  const Index d = X->dim();
  auto mul = [&p, d](const SparseVector& x, const SparseVector& y) { return bil(p.product, x, y, d); };
  return {triple_identity("associativity", "algebra_associativity", X, X, X, X,
                          [mul](Index u, Index v, Index w) {
                            return Sides{mul(mul(e(u), e(v)), e(w)), mul(e(u), mul(e(v), e(w)))};
                          }),
          single_identity("unit_left", "algebra_unit", X, X,
                          [mul, &p](Index u) { return Sides{mul(p.unit, e(u)), e(u)}; }),
          single_identity("unit_right", "algebra_unit", X, X,
                          [mul, &p](Index u) { return Sides{mul(e(u), p.unit), e(u)}; })};
}

Identity beta_commutative_identity(const PoissonAlgebraData& p) {
  const auto& X = p.carrier;
  const Index d = X->dim();
  auto c = std::make_shared<Carrier>(X, p.beta);
  return pair_identity("beta_commutative", "beta_commutativity", X, X, X, [&p, c, d](Index u, Index v) {
    return Sides{p.product.column(v * d + u).scaled((*c)(u, v)), p.product.column(u * d + v)};
  });
}

std::vector<Identity> lie_identities(const SpacePtr& X, const LinearMap& bracket, const BetaSpec& beta) {
  const Index d = X->dim();
  auto c = std::make_shared<Carrier>(X, beta);
  auto br = [bracket, d](const SparseVector& x, const SparseVector& y) { return bil(bracket, x, y, d); };
  return {pair_identity("lie_skew", "lie_skew_symmetry", X, X, X,
                        [br, c](Index u, Index v) {
                          Sides s;
                          s.lhs = br(e(u), e(v));
                          s.lhs.add_scaled(br(e(v), e(u)), (*c)(u, v));
                          return s;
                        }),
          triple_identity("lie_jacobi", "lie_jacobi", X, X, X, X, [br, c](Index u, Index v, Index w) {
            const auto& b = *c;
            Sides s;
            s.lhs = br(br(e(u), e(v)), e(w));
            s.lhs.add_scaled(br(br(e(v), e(w)), e(u)), b(u, v) * b(u, w));
            s.lhs.add_scaled(br(br(e(w), e(u)), e(v)), b(u, v) * b(u, w) * b(v, w) * b(v, u));
            return s;
          })};
}

Identity leibniz_identity(const PoissonAlgebraData& p) {
  const auto& X = p.carrier;
  const Index d = X->dim();
  auto c = std::make_shared<Carrier>(X, p.beta);
  auto mul = [&p, d](const SparseVector& x, const SparseVector& y) { return bil(p.product, x, y, d); };
  auto br = [&p, d](const SparseVector& x, const SparseVector& y) { return bil(p.bracket, x, y, d); };
  return triple_identity("leibniz", "poisson_leibniz", X, X, X, X, [=](Index u, Index v, Index w) {
    Sides s;
    s.lhs = br(e(u), mul(e(v), e(w)));
    s.rhs = mul(br(e(u), e(v)), e(w));
    s.rhs.add_scaled(mul(e(v), br(e(w), e(u))), -((*c)(u, v) * (*c)(u, w)));
    return s;
  });
}

std::vector<Identity> poisson_module_base_identities(const PoissonModuleData& m) {
  const auto& P = *m.base;
  const auto& X = P.carrier;
  const auto& M = m.carrier;
  const Index d = X->dim();
  const Index dm = M->dim();
  auto mul = [&P, d](const SparseVector& x, const SparseVector& y) { return bil(P.product, x, y, d); };
  auto act = [&m, dm](const SparseVector& x, const SparseVector& y) { return bil(m.action, x, y, dm); };
  return {triple_identity("module_associativity", "module_associativity", X, X, M, M,
                          [=](Index u, Index v, Index w) {
                            return Sides{act(mul(e(u), e(v)), e(w)), act(e(u), act(e(v), e(w)))};
                          }),
          single_identity("module_unit", "module_unit", M, M,
                          [=, &P](Index w) { return Sides{act(P.unit, e(w)), e(w)}; })};
}

std::vector<Identity> poisson_module_lie_identities(const PoissonModuleData& m) {
  const auto& P = *m.base;
  const auto& X = P.carrier;
  const auto& M = m.carrier;
  const Index d = X->dim();
  const Index dm = M->dim();
  auto c = std::make_shared<Carrier>(X, P.beta);
  auto br = [&P, d](const SparseVector& x, const SparseVector& y) { return bil(P.bracket, x, y, d); };
  auto act = [&m, dm](const SparseVector& x, const SparseVector& y) { return bil(m.action, x, y, dm); };
  auto lie = [&m, dm](const SparseVector& x, const SparseVector& y) { return bil(m.lie_action, x, y, dm); };
  return {triple_identity("lie_module", "lie_module", X, X, M, M,
                          [=](Index u, Index v, Index w) {
                            Sides s;
                            s.lhs = lie(br(e(u), e(v)), e(w));
                            s.rhs = lie(e(u), lie(e(v), e(w)));
                            s.rhs.add_scaled(lie(e(v), lie(e(u), e(w))), -(*c)(u, v));
                            return s;
                          }),
          triple_identity("poisson_module_compatibility", "poisson_module_compatibility", X, X, M, M,
                          [=](Index u, Index v, Index w) {
                            Sides s;
                            s.lhs = lie(e(u), act(e(v), e(w)));
                            s.rhs = act(br(e(u), e(v)), e(w));
                            s.rhs.add_scaled(act(e(v), lie(e(u), e(w))), (*c)(u, v));
                            return s;
                          })};
}

std::vector<Identity> gamma_coalgebra_identities(const CoPoissonCoalgebraData& p) {
  const auto& X = p.carrier;
  const Index d = X->dim();
  auto XXX = tensor3(X, X, X);
  LinearMap cm(d, 1);
  for (const auto& [i, v] : p.counit) cm.add_entry(0, i, v);
  return {single_identity("coassociativity", "coalgebra_coassociativity", X, XXX,
                          [&p, d](Index u) {
                            const auto& x = p.coproduct.column(u);
                            return Sides{apply_left(p.coproduct, x, d), apply_right(p.coproduct, x, d)};
                          }),
          single_identity("counit_left", "coalgebra_counit", X, X,
                          [&p, cm, d](Index u) { return Sides{apply_left(cm, p.coproduct.column(u), d), e(u)}; }),
          single_identity("counit_right", "coalgebra_counit", X, X, [&p, cm, d](Index u) {
            return Sides{apply_right(cm, p.coproduct.column(u), d), e(u)};
          })};
}

Identity beta_cocommutative_identity(const CoPoissonCoalgebraData& p) {
  const auto& X = p.carrier;
  auto XX = make_space(tensor(*X, *X));
  auto c = std::make_shared<Carrier>(X, p.beta);
  return single_identity("beta_cocommutative", "beta_cocommutativity", X, XX, [&p, c, X](Index u) {
    const auto& x = p.coproduct.column(u);
    return Sides{swap_beta(x, *X, *X, c->beta), x};
  });
}

std::vector<Identity> colie_identities(const SpacePtr& X, const LinearMap& cobracket, const BetaSpec& beta) {
  const Index d = X->dim();
  auto XX = make_space(tensor(*X, *X));
  auto XXX = tensor3(X, X, X);
  auto c = std::make_shared<Carrier>(X, beta);
  return {single_identity("colie_skew", "colie_skew_symmetry", X, XX,
                          [cobracket, c, X](Index u) {
                            const auto& x = cobracket.column(u);
                            Sides s;
                            s.lhs = x + swap_beta(x, *X, *X, c->beta);
                            return s;
                          }),
          single_identity("colie_jacobi", "colie_jacobi", X, XXX, [cobracket, c, d](Index u) {
            SparseVector y = apply_right(cobracket, cobracket.column(u), d);
            SparseVector y1 = xi(*c, y);
            SparseVector y2 = xi(*c, y1);
            Sides s;
            s.lhs = y + y1 + y2;
            return s;
          })};
}

Identity coleibniz_identity(const CoPoissonCoalgebraData& p) {
  const auto& X = p.carrier;
  const Index d = X->dim();
  auto c = std::make_shared<Carrier>(X, p.beta);
  return single_identity("coleibniz", "copoisson_coleibniz", X, tensor3(X, X, X), [&p, c, d](Index u) {
    Sides s;
    s.lhs = apply_left(p.coproduct, p.cobracket.column(u), d);
    const auto& x = p.coproduct.column(u);
    s.rhs = apply_right(p.cobracket, x, d);
    s.rhs.add_scaled(xi(*c, apply_left(p.cobracket, x, d)), Scalar(-1));
    return s;
  });
}

std::vector<Identity> copoisson_comodule_base_identities(const CoPoissonComoduleData& m) {
  const auto& P = *m.base;
  const auto& X = P.carrier;
  const auto& M = m.carrier;
  const Index d = X->dim();
  auto MXX = tensor3(M, X, X);
  LinearMap cm(d, 1);
  for (const auto& [i, v] : P.counit) cm.add_entry(0, i, v);
  return {single_identity("comodule_coassociativity", "comodule_coassociativity", M, MXX,
                          [&m, &P, d](Index u) {
                            const auto& x = m.coaction.column(u);
                            return Sides{apply_right(P.coproduct, x, d), apply_left(m.coaction, x, d)};
                          }),
          single_identity("comodule_counit", "comodule_counit", M, M,
                          [&m, cm, d](Index u) { return Sides{apply_right(cm, m.coaction.column(u), d), e(u)}; })};
}

std::vector<Identity> copoisson_comodule_lie_identities(const CoPoissonComoduleData& m) {
  const auto& P = *m.base;
  const auto& X = P.carrier;
  const auto& M = m.carrier;
  const Index d = X->dim();
  auto MXX = tensor3(M, X, X);
  auto c = std::make_shared<Carrier>(X, P.beta);
  return {single_identity("colie_comodule", "colie_comodule", M, MXX,
                          [&m, &P, c, d](Index u) {
                            const auto& x = m.lie_coaction.column(u);
                            Sides s;
                            s.lhs = apply_right(P.cobracket, x, d);
                            SparseVector y = apply_left(m.lie_coaction, x, d);
                            s.rhs = y;
                            s.rhs.add_scaled(swap23(*c, y), Scalar(-1));
                            return s;
                          }),
          single_identity("copoisson_comodule_compatibility", "copoisson_comodule_compatibility", M, MXX,
                          [&m, &P, c, d](Index u) {
                            Sides s;
                            s.lhs = apply_left(m.coaction, m.lie_coaction.column(u), d);
                            const auto& x = m.coaction.column(u);
                            s.rhs = apply_right(P.cobracket, x, d);
                            s.rhs += swap23(*c, apply_left(m.lie_coaction, x, d));
                            return s;
                          })};
}

}  // namespace

CheckReport check_gamma_algebra(const PoissonAlgebraData& p) { return run("gamma_algebra", gamma_algebra_identities(p)); }

CheckReport check_beta_commutative(const PoissonAlgebraData& p) {
  return run("beta_commutative", {beta_commutative_identity(p)});
}

CheckReport check_lie(const SpacePtr& X, const LinearMap& bracket, const BetaSpec& beta) {
  return run("lie", lie_identities(X, bracket, beta));
}

CheckReport check_poisson(const PoissonAlgebraData& p) {
  CheckReport rep;
  rep.suite = "poisson";
  AxiomResult pre = multiplicative_precondition("poisson_precondition", p.beta, p.gamma0, {p.carrier.get()});
  rep.add(pre);
  if (pre.verdict != Verdict::Pass) return rep;
  rep.merge(check_gamma_algebra(p));
  rep.merge(check_beta_commutative(p));
  rep.merge(check_lie(p.carrier, p.bracket, p.beta));
  rep.add(verify(leibniz_identity(p)));
  return rep;
}

CheckReport check_poisson_module(const PoissonModuleData& m) {
  CheckReport rep = run("poisson_module", poisson_module_base_identities(m));
  const auto& P = *m.base;
  AxiomResult pre =
      multiplicative_precondition("poisson_module_precondition", P.beta, P.gamma0, {P.carrier.get(), m.carrier.get()});
  rep.add(pre);
  if (pre.verdict != Verdict::Pass) return rep;
  for (const auto& id : poisson_module_lie_identities(m)) rep.add(verify(id));
  return rep;
}

CheckReport check_gamma_coalgebra(const CoPoissonCoalgebraData& p) {
  return run("gamma_coalgebra", gamma_coalgebra_identities(p));
}

CheckReport check_beta_cocommutative(const CoPoissonCoalgebraData& p) {
  return run("beta_cocommutative", {beta_cocommutative_identity(p)});
}

CheckReport check_colie(const SpacePtr& X, const LinearMap& cobracket, const BetaSpec& beta) {
  return run("colie", colie_identities(X, cobracket, beta));
}

CheckReport check_copoisson(const CoPoissonCoalgebraData& p) {
  CheckReport rep;
  rep.suite = "copoisson";
  AxiomResult pre = multiplicative_precondition("copoisson_precondition", p.beta, p.gamma0, {p.carrier.get()});
  rep.add(pre);
  if (pre.verdict != Verdict::Pass) return rep;
  rep.merge(check_gamma_coalgebra(p));
  rep.merge(check_beta_cocommutative(p));
  rep.merge(check_colie(p.carrier, p.cobracket, p.beta));
  rep.add(verify(coleibniz_identity(p)));
  return rep;
}

CheckReport check_copoisson_comodule(const CoPoissonComoduleData& m) {
  CheckReport rep = run("copoisson_comodule", copoisson_comodule_base_identities(m));
  const auto& P = *m.base;
  AxiomResult pre = multiplicative_precondition("copoisson_comodule_precondition", P.beta, P.gamma0,
                                                {P.carrier.get(), m.carrier.get()});
  rep.add(pre);
  if (pre.verdict != Verdict::Pass) return rep;
  for (const auto& id : copoisson_comodule_lie_identities(m)) rep.add(verify(id));
  return rep;
}

std::vector<Identity> poisson_identities(const PoissonAlgebraData& p) {
  auto out = gamma_algebra_identities(p);
  out.push_back(beta_commutative_identity(p));
  for (auto& i : lie_identities(p.carrier, p.bracket, p.beta)) out.push_back(std::move(i));
  out.push_back(leibniz_identity(p));
  return out;
}

std::vector<Identity> poisson_module_identities(const PoissonModuleData& m) {
  auto out = poisson_module_base_identities(m);
  for (auto& i : poisson_module_lie_identities(m)) out.push_back(std::move(i));
  return out;
}

std::vector<Identity> copoisson_identities(const CoPoissonCoalgebraData& p) {
  auto out = gamma_coalgebra_identities(p);
  out.push_back(beta_cocommutative_identity(p));
  for (auto& i : colie_identities(p.carrier, p.cobracket, p.beta)) out.push_back(std::move(i));
  out.push_back(coleibniz_identity(p));
  return out;
}

std::vector<Identity> copoisson_comodule_identities(const CoPoissonComoduleData& m) {
  auto out = copoisson_comodule_base_identities(m);
  for (auto& i : copoisson_comodule_lie_identities(m)) out.push_back(std::move(i));
  return out;
}

// ---------------------------------------------------------------- isomorphisms

namespace {

AxiomResult parity_result(const BetaSpec& beta, const GroupElement& g0, const std::vector<const GradedSpace*>& sp) {
  AxiomResult r = parity_precondition(beta, g0, sp);
  r.id = "relation_parity";
  r.anchor = "beta_relation_hypothesis";
  return r;
}

bool preconditions(CheckReport& rep, const BetaSpec& beta, const GroupElement& g0,
                   const std::vector<const GradedSpace*>& sp) {
  rep.add(parity_result(beta, g0, sp));
  rep.add(multiplicative_precondition("relation_multiplicative", beta, g0, sp));
  return rep.ok();
}

AxiomResult c2_failure(const C2Error& err) {
  AxiomResult r = err.result();
  r.detail = "induced structure not well defined (" + r.id + ")";
  r.id = "iso_inputs_well_defined";
  return r;
}

/// Homogeneity, bijectivity and per-degree dimension match for f : S -> T.
void shape_checks(CheckReport& rep, const GradedMap& f, const SpacePtr& sub_dual_of) {
  AxiomResult h;
  h.id = "iso_homogeneous";
  h.anchor = "iso_degree_zero";
  h.cases = f.source->dim();
  if (auto bad = f.inhomogeneous_column()) {
    h.verdict = Verdict::Fail;
    h.detail = "column " + f.source->label(*bad) + " is not homogeneous of degree 0";
  }
  rep.add(h);

  AxiomResult b;
  b.id = "iso_bijective";
  b.anchor = "iso_bijective";
  EchelonBasis img;
  for (Index j = 0; j < f.source->dim(); ++j) img.insert(f.map.column(j));
  b.cases = f.source->dim();
  b.data = {{"source_dim", f.source->dim()}, {"target_dim", f.target->dim()}, {"rank", img.dim()}};
  if (img.dim() != f.source->dim() || f.source->dim() != f.target->dim()) {
    b.verdict = Verdict::Fail;
    b.detail = "rank " + std::to_string(img.dim()) + " for dimensions " + std::to_string(f.source->dim()) + " -> " +
               std::to_string(f.target->dim());
  }
  rep.add(b);

  AxiomResult a;
  a.id = "annihilator_dimensions";
  a.anchor = "annihilator_dimensions";
  nlohmann::json per = nlohmann::json::array();
  std::set<GroupElement> degs;
  for (const auto& g : f.source->support()) degs.insert(g);
  for (const auto& g : sub_dual_of->support()) degs.insert(-g);
  for (const auto& g : degs) {
    Index ds = f.source->dim_at(g);
    Index dk = sub_dual_of->dim_at(-g);
    per.push_back({{"degree", g.str()}, {"quotient_or_kernel", ds}, {"dual_side", dk}});
    ++a.cases;
    if (ds != dk && a.verdict == Verdict::Pass) {
      a.verdict = Verdict::Fail;
      a.detail = "degree " + g.str() + ": " + std::to_string(ds) + " vs " + std::to_string(dk);
    }
  }
  a.data = {{"degrees", per}};
  rep.add(a);
}

/// Phi(i)[r] = kb[r] evaluated at ambient index reps[i].
LinearMap evaluation(const std::vector<Index>& reps, const std::vector<SparseVector>& kb) {
  LinearMap phi(reps.size(), kb.size());
  for (Index i = 0; i < reps.size(); ++i) {
    for (Index r = 0; r < kb.size(); ++r) {
      Scalar v = kb[r].get(reps[i]);
      if (!v.is_zero()) phi.add_entry(r, i, v);
    }
  }
  return phi;
}

/// Psi(r)[s] = kb[r] at ambient index reps[s].
LinearMap coevaluation(const std::vector<SparseVector>& kb, const std::vector<Index>& reps) {
  LinearMap psi(kb.size(), reps.size());
  for (Index r = 0; r < kb.size(); ++r) {
    for (Index s = 0; s < reps.size(); ++s) {
      Scalar v = kb[r].get(reps[s]);
      if (!v.is_zero()) psi.add_entry(s, r, v);
    }
  }
  return psi;
}

/// Every pairing of a vector of `left` with a vector of `right` vanishes.
Identity orthogonal(const std::string& id, const GradedSubspace& left, const GradedSubspace& right) {
  auto lb = left.basis();
  auto rb = right.basis();
  auto k = make_space(ground_field(left.ambient()->spec()));
  return pair_identity(id, "iso_well_defined", make_space(left.as_space()), make_space(right.as_space()), k,
                       [lb, rb](Index a, Index b) {
                         Scalar v(0);
                         for (const auto& [i, x] : lb[a]) v += x * rb[b].get(i);
                         Sides s;
                         if (!v.is_zero()) s.lhs.add(0, v);
                         return s;
                       });
}

Identity intertwines_product(const std::string& id, const SpacePtr& A, const SpacePtr& B, const SpacePtr& out,
                             const LinearMap& fa, const LinearMap& fb, const LinearMap& fout, const LinearMap& src_op,
                             const LinearMap& dst_op) {
  const Index db = B->dim();
  const Index db2 = fb.target_dim();
  return pair_identity(id, "iso_intertwines", A, B, out, [=](Index u, Index v) {
    Sides s;
    s.lhs = fout.apply(src_op.column(u * db + v));
    s.rhs = bil(dst_op, fa.column(u), fb.column(v), db2);
    return s;
  });
}

Identity intertwines_coproduct(const std::string& id, const SpacePtr& A, const SpacePtr& out, const LinearMap& fa,
                               const LinearMap& f1, const LinearMap& f2, const LinearMap& src_op,
                               const LinearMap& dst_op) {
  LinearMap k = kron(f1, f2);
  return single_identity(id, "iso_intertwines", A, out, [=](Index u) {
    return Sides{k.apply(src_op.column(u)), dst_op.apply(fa.column(u))};
  });
}

}  // namespace

IsoResult poisson_duality_iso(const VertexAlgebraData& a) {
  IsoResult out;
  auto& rep = out.report;
  rep.suite = "poisson_duality_iso";
  if (!preconditions(rep, a.beta, a.gamma0, {a.space.get()})) return out;
  try {
    C2Algebra R = c2_algebra(a);
    VertexCoalgebraData dual = dualize_algebra(a).first;
    CoC2Coalgebra K = co_c2_coalgebra(dual);
    auto kb = K.kernel.basis();
    auto kdual = make_space(restricted_dual(*K.copoisson.carrier));
    const Index dk = kb.size();
    LinearMap phi = evaluation(R.quotient.reps, kb);
    out.map = GradedMap{R.poisson.carrier, kdual, zero_of(a.space), phi};
    rep.add(verify(orthogonal("iso_well_defined", R.quotient.sub, K.kernel)));
    shape_checks(rep, out.map, K.copoisson.carrier);
    LinearMap prod = transpose_cobilinear(K.copoisson.coproduct, dk, dk);
    LinearMap brk = transpose_cobilinear(K.copoisson.cobracket, dk, dk);
    const auto& X = R.poisson.carrier;
    rep.add(verify(intertwines_product("iso_product", X, X, kdual, phi, phi, phi, R.poisson.product, prod)));
    rep.add(verify(intertwines_product("iso_bracket", X, X, kdual, phi, phi, phi, R.poisson.bracket, brk)));
    AxiomResult u;
    u.id = "iso_unit";
    u.anchor = "iso_intertwines";
    u.cases = 1;
    SparseVector lhs = phi.apply(R.poisson.unit);
    if (!(lhs == K.copoisson.counit)) {
      u.verdict = Verdict::Fail;
      u.witness = Witness{{}, {}, kdual->render(lhs), kdual->render(K.copoisson.counit)};
    }
    rep.add(u);
  } catch (const C2Error& err) {
    rep.add(c2_failure(err));
  }
  return out;
}

IsoResult copoisson_duality_iso(const VertexCoalgebraData& c) {
  IsoResult out;
  auto& rep = out.report;
  rep.suite = "copoisson_duality_iso";
  if (!preconditions(rep, c.beta, c.gamma0, {c.space.get()})) return out;
  try {
    CoC2Coalgebra K = co_c2_coalgebra(c);
    VertexAlgebraData dual = dualize_coalgebra(c).first;
    C2Algebra R = c2_algebra(dual);
    auto kb = K.kernel.basis();
    auto rdual = make_space(restricted_dual(*R.poisson.carrier));
    const Index dr = R.poisson.carrier->dim();
    LinearMap psi = coevaluation(kb, R.quotient.reps);
    out.map = GradedMap{K.copoisson.carrier, rdual, zero_of(c.space), psi};
    rep.add(verify(orthogonal("iso_well_defined", K.kernel, R.quotient.sub)));
    shape_checks(rep, out.map, R.poisson.carrier);
    LinearMap cop = transpose_bilinear(R.poisson.product, dr, dr);
    LinearMap cobr = transpose_bilinear(R.poisson.bracket, dr, dr);
    const auto& X = K.copoisson.carrier;
    auto rr = make_space(tensor(*rdual, *rdual));
    rep.add(verify(intertwines_coproduct("iso_coproduct", X, rr, psi, psi, psi, K.copoisson.coproduct, cop)));
    rep.add(verify(intertwines_coproduct("iso_cobracket", X, rr, psi, psi, psi, K.copoisson.cobracket, cobr)));
    auto k1 = make_space(ground_field(c.space->spec()));
    rep.add(verify(single_identity("iso_counit", "iso_intertwines", X, k1, [&](Index u) {
      Sides s;
      Scalar v(0);
      for (const auto& [i, x] : psi.column(u)) v += x * R.poisson.unit.get(i);
      if (!v.is_zero()) s.rhs.add(0, v);
      Scalar w = K.copoisson.counit.get(u);
      if (!w.is_zero()) s.lhs.add(0, w);
      return s;
    })));
  } catch (const C2Error& err) {
    rep.add(c2_failure(err));
  }
  return out;
}

IsoResult poisson_duality_iso_module(const ModuleData& m) {
  IsoResult out;
  auto& rep = out.report;
  rep.suite = "poisson_duality_iso_module";
  const auto& a = *m.algebra;
  if (!preconditions(rep, a.beta, a.gamma0, {a.space.get(), m.mspace.get()})) return out;
  try {
    C2Algebra RA = c2_algebra(a);
    C2Module RM = c2_module(RA, m);
    ComoduleData dual = dualize_module(m).first;
    CoC2Coalgebra KA = co_c2_coalgebra(*dual.coalgebra);
    CoC2Comodule KM = co_c2_comodule(KA, dual);
    auto kab = KA.kernel.basis();
    auto kmb = KM.kernel.basis();
    auto kadual = make_space(restricted_dual(*KA.copoisson.carrier));
    auto kmdual = make_space(restricted_dual(*KM.copoisson.carrier));
    LinearMap phi = evaluation(RA.quotient.reps, kab);
    LinearMap phim = evaluation(RM.quotient.reps, kmb);
    out.map = GradedMap{RM.poisson.carrier, kmdual, zero_of(a.space), phim};
    rep.add(verify(orthogonal("iso_well_defined", RM.quotient.sub, KM.kernel)));
    shape_checks(rep, out.map, KM.copoisson.carrier);
    const Index dka = kab.size();
    const Index dkm = kmb.size();
    LinearMap act = transpose_cobilinear(KM.copoisson.coaction, dka, dkm);
    LinearMap lie = transpose_cobilinear(KM.copoisson.lie_coaction, dka, dkm);
    const auto& X = RA.poisson.carrier;
    const auto& M = RM.poisson.carrier;
    rep.add(verify(intertwines_product("iso_action", X, M, kmdual, phi, phim, phim, RM.poisson.action, act)));
    rep.add(
        verify(intertwines_product("iso_lie_action", X, M, kmdual, phi, phim, phim, RM.poisson.lie_action, lie)));
  } catch (const C2Error& err) {
    rep.add(c2_failure(err));
  }
  return out;
}

IsoResult copoisson_duality_iso_comodule(const ComoduleData& m) {
  IsoResult out;
  auto& rep = out.report;
  rep.suite = "copoisson_duality_iso_comodule";
  const auto& c = *m.coalgebra;
  if (!preconditions(rep, c.beta, c.gamma0, {c.space.get(), m.mspace.get()})) return out;
  try {
    CoC2Coalgebra KV = co_c2_coalgebra(c);
    CoC2Comodule KM = co_c2_comodule(KV, m);
    ModuleData dual = dualize_comodule(m).first;
    C2Algebra RA = c2_algebra(*dual.algebra);
    C2Module RM = c2_module(RA, dual);
    auto kvb = KV.kernel.basis();
    auto kmb = KM.kernel.basis();
    auto radual = make_space(restricted_dual(*RA.poisson.carrier));
    auto rmdual = make_space(restricted_dual(*RM.poisson.carrier));
    LinearMap psi = coevaluation(kvb, RA.quotient.reps);
    LinearMap psim = coevaluation(kmb, RM.quotient.reps);
    out.map = GradedMap{KM.copoisson.carrier, rmdual, zero_of(c.space), psim};
    rep.add(verify(orthogonal("iso_well_defined", KM.kernel, RM.quotient.sub)));
    shape_checks(rep, out.map, RM.poisson.carrier);
    const Index dra = RA.poisson.carrier->dim();
    const Index drm = RM.poisson.carrier->dim();
    LinearMap coact = transpose_bilinear(RM.poisson.action, dra, drm);
    LinearMap colie = transpose_bilinear(RM.poisson.lie_action, dra, drm);
    const auto& M = KM.copoisson.carrier;
    auto out_space = make_space(tensor(*rmdual, *radual));
    rep.add(verify(intertwines_coproduct("iso_coaction", M, out_space, psim, psim, psi, KM.copoisson.coaction, coact)));
    rep.add(verify(
        intertwines_coproduct("iso_lie_coaction", M, out_space, psim, psim, psi, KM.copoisson.lie_coaction, colie)));
  } catch (const C2Error& err) {
    rep.add(c2_failure(err));
  }
  return out;
}

}  // namespace vakit
