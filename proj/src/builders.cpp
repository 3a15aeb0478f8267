#include "vakit/builders.hpp"

#include <algorithm>
#include <numeric>

#include "vakit/duality.hpp"

namespace vakit {

std::string kind_name(StructureKind k) {
  switch (k) {
    case StructureKind::Algebra:
      return "algebra";
    case StructureKind::Coalgebra:
      return "coalgebra";
    case StructureKind::Module:
      return "module";
    case StructureKind::Comodule:
      return "comodule";
  }
  return "algebra";
}

StructureKind kind_from_name(const std::string& s) {
  if (s == "algebra") return StructureKind::Algebra;
  if (s == "coalgebra") return StructureKind::Coalgebra;
  if (s == "module") return StructureKind::Module;
  if (s == "comodule") return StructureKind::Comodule;
  throw std::invalid_argument("unknown structure kind '" + s + "'");
}

namespace {

int conductor_of(const Scalar& s) { return s.conductor(); }

int lcm(int a, int b) { return a / std::gcd(a, b) * b; }

int conductor_of(const LinearMap& f) {
  int n = 1;
  for (Index j = 0; j < f.source_dim(); ++j) {
    for (const auto& [i, c] : f.column(j)) n = lcm(n, conductor_of(c));
  }
  return n;
}

int conductor_of(const SparseVector& v) {
  int n = 1;
  for (const auto& [i, c] : v) n = lcm(n, conductor_of(c));
  return n;
}

int conductor_of(const OpFamily& ops) {
  int n = 1;
  for (const auto& [k, f] : ops) n = lcm(n, conductor_of(f));
  return n;
}

int conductor_of(const BetaSpec& b) {
  switch (b.kind()) {
    case BetaSpec::Kind::QBilinear:
      return b.q().conductor();
    case BetaSpec::Kind::Table: {
      int n = 1;
      for (const auto& [k, v] : b.entries()) n = lcm(n, v.conductor());
      return n;
    }
    case BetaSpec::Kind::Product: {
      int n = 1;
      for (const auto& f : b.factors()) n = lcm(n, conductor_of(f));
      return n;
    }
    default:
      return 1;
  }
}

}  // namespace

Structure Structure::of(VertexAlgebraData a) {
  Structure s;
  s.kind = StructureKind::Algebra;
  s.conductor = lcm(lcm(conductor_of(a.ops), conductor_of(a.vacuum)), conductor_of(a.beta));
  s.algebra = std::make_shared<const VertexAlgebraData>(std::move(a));
  return s;
}

Structure Structure::of(VertexCoalgebraData c) {
  Structure s;
  s.kind = StructureKind::Coalgebra;
  s.conductor = lcm(lcm(conductor_of(c.coops), conductor_of(c.covacuum)), conductor_of(c.beta));
  s.coalgebra = std::make_shared<const VertexCoalgebraData>(std::move(c));
  return s;
}

Structure Structure::of(ModuleData m) {
  Structure s = of(*m.algebra);
  s.kind = StructureKind::Module;
  s.algebra = m.algebra;
  s.conductor = lcm(s.conductor, conductor_of(m.mops));
  if (m.d_m) s.conductor = lcm(s.conductor, conductor_of(*m.d_m));
  if (m.omega) s.conductor = lcm(s.conductor, conductor_of(*m.omega));
  s.module = std::move(m);
  return s;
}

Structure Structure::of(ComoduleData m) {
  Structure s = of(*m.coalgebra);
  s.kind = StructureKind::Comodule;
  s.coalgebra = m.coalgebra;
  s.conductor = lcm(s.conductor, conductor_of(m.comops));
  if (m.cod_m) s.conductor = lcm(s.conductor, conductor_of(*m.cod_m));
  if (m.rho) s.conductor = lcm(s.conductor, conductor_of(*m.rho));
  s.comodule = std::move(m);
  return s;
}

namespace {

SparseVector mul(const DifferentialAlgebraSpec& s, const SparseVector& x, const SparseVector& y) {
  SparseVector out;
  const Index d = s.space->dim();
  for (const auto& [i, a] : x) {
    for (const auto& [j, b] : y) out.add_scaled(s.product.column(i * d + j), a * b);
  }
  return out;
}

/// Smallest k >= 1 with D^k = 0.
std::int64_t validate(const DifferentialAlgebraSpec& s, bool commutative) {
  const Index d = s.space->dim();
  if (s.product.source_dim() != d * d || s.product.target_dim() != d) throw BuilderError("product has wrong shape");
  if (s.derivation.source_dim() != d || s.derivation.target_dim() != d) {
    throw BuilderError("derivation has wrong shape");
  }
  const auto& sp = *s.space;
  for (Index i = 0; i < d; ++i) {
    SparseVector ei = SparseVector::basis(i);
    if (!(mul(s, s.unit, ei) == ei) || !(mul(s, ei, s.unit) == ei)) {
      throw BuilderError("unit fails on " + sp.label(i));
    }
    for (Index j = 0; j < d; ++j) {
      SparseVector ej = SparseVector::basis(j);
      SparseVector ij = mul(s, ei, ej);
      if (commutative && !(ij == mul(s, ej, ei))) {
        throw BuilderError("product is not commutative on " + sp.label(i) + ", " + sp.label(j));
      }
      for (const auto& [k, c] : ij) {
        if (!(sp.degree(k) == sp.degree(i) + sp.degree(j))) throw BuilderError("product is not graded");
      }
      SparseVector lhs = s.derivation.apply(ij);
      SparseVector rhs = mul(s, s.derivation.column(i), ej) + mul(s, ei, s.derivation.column(j));
      if (!(lhs == rhs)) throw BuilderError("D is not a derivation on " + sp.label(i) + ", " + sp.label(j));
      for (Index k = 0; k < d; ++k) {
        SparseVector ek = SparseVector::basis(k);
        if (!(mul(s, ij, ek) == mul(s, ei, mul(s, ej, ek)))) throw BuilderError("product is not associative");
      }
    }
    for (const auto& [k, c] : s.derivation.column(i)) {
      if (!(sp.degree(k) == sp.degree(i) - s.gamma0.scaled(2))) throw BuilderError("D is not of degree -2 gamma0");
    }
  }
  if (!s.derivation.apply(s.unit).is_zero()) throw BuilderError("D(1) != 0");
  LinearMap p = s.derivation;
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(d) + 1; ++k) {
    if (p.is_zero()) return k;
    p = compose(s.derivation, p);
  }
  throw BuilderError("D is not nilpotent");
}

VertexAlgebraData build(const DifferentialAlgebraSpec& s, BetaSpec beta, bool commutative) {
  const std::int64_t k = validate(s, commutative);
  const Index d = s.space->dim();
  VertexAlgebraData a;
  a.space = s.space;
  a.gamma0 = s.gamma0;
  a.beta = std::move(beta);
  a.window = {-k, -1};
  a.vacuum = s.unit;
  LinearMap dj = LinearMap::identity(d);
  for (std::int64_t j = 0; j < k; ++j) {
    LinearMap y(d * d, d);
    Scalar inv = Scalar(1) / factorial(j);
    for (Index u = 0; u < d; ++u) {
      for (Index v = 0; v < d; ++v) {
        y.set_column(u * d + v, mul(s, dj.column(u), SparseVector::basis(v)).scaled(inv));
      }
    }
    if (!y.is_zero()) a.ops.emplace(-j - 1, std::move(y));
    dj = compose(s.derivation, dj);
  }
  return a;
}

}  // namespace

VertexAlgebraData from_differential_algebra(const DifferentialAlgebraSpec& spec) {
  return build(spec, BetaSpec::one(), true);
}

VertexAlgebraData from_associative_with_derivation(const DifferentialAlgebraSpec& spec) {
  return build(spec, BetaSpec::zero(), false);
}

DifferentialAlgebraSpec truncated_polynomial(int k, bool zero_derivation) {
  if (k < 1) throw BuilderError("truncation order must be positive");
  GroupSpec g;
  std::vector<BasisElement> basis;
  for (int i = 0; i < k; ++i) {
    std::string lab = i == 0 ? "one" : (i == 1 ? "e" : "e" + std::to_string(i));
    basis.push_back({lab, GroupElement::zero(g)});
  }
  DifferentialAlgebraSpec s;
  s.space = make_space(g, basis);
  s.gamma0 = GroupElement::zero(g);
  const Index d = k;
  s.product = LinearMap(d * d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (i + j < d) s.product.add_entry(i + j, i * d + j, Scalar(1));
    }
  }
  s.unit = SparseVector::basis(0);
  s.derivation = LinearMap(d, d);
  if (!zero_derivation) {
    for (Index i = 1; i + 1 < d; ++i) s.derivation.add_entry(i + 1, i, Scalar(static_cast<long>(i)));
  }
  return s;
}

DifferentialAlgebraSpec upper_triangular() {
  GroupSpec g;
  auto z = GroupElement::zero(g);
  DifferentialAlgebraSpec s;
  s.space = make_space(g, std::vector<BasisElement>{{"e11", z}, {"e12", z}, {"e22", z}});
  s.gamma0 = z;
  const Index d = 3;
  s.product = LinearMap(d * d, d);
  // e11 e11 = e11, e11 e12 = e12, e12 e22 = e12, e22 e22 = e22
  s.product.add_entry(0, 0 * d + 0, Scalar(1));
  s.product.add_entry(1, 0 * d + 1, Scalar(1));
  s.product.add_entry(1, 1 * d + 2, Scalar(1));
  s.product.add_entry(2, 2 * d + 2, Scalar(1));
  s.unit = SparseVector::basis(0) + SparseVector::basis(2);
  s.derivation = LinearMap(d, d);
  s.derivation.add_entry(1, 0, Scalar(-1));
  s.derivation.add_entry(1, 2, Scalar(1));
  return s;
}

VertexAlgebraData exterior_example(int n) {
  if (n < 1 || n > 8) throw BuilderError("exterior example needs 1 <= n <= 8");
  GroupSpec g{1, {}};
  std::vector<unsigned> words;
  for (unsigned m = 0; m < (1u << n); ++m) words.push_back(m);
  std::stable_sort(words.begin(), words.end(), [](unsigned a, unsigned b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    if (pa != pb) return pa < pb;
    for (int i = 0; i < 32; ++i) {
      bool x = a & (1u << i), y = b & (1u << i);
      if (x != y) return x;
    }
    return false;
  });
  std::vector<BasisElement> basis;
  std::vector<Index> pos(1u << n);
  for (Index i = 0; i < words.size(); ++i) {
    unsigned w = words[i];
    pos[w] = i;
    std::string lab;
    for (int b = 0; b < n; ++b) {
      if (w & (1u << b)) lab += "t" + std::to_string(b + 1);
    }
    if (lab.empty()) lab = "one";
    basis.push_back({lab, GroupElement(g, {__builtin_popcount(w)})});
  }
  const Index d = words.size();
  LinearMap y(d * d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      unsigned a = words[i], b = words[j];
      if (a & b) continue;
      // sign of merging: pairs (x in a, y in b) with x > y
      int inv = 0;
      for (int x = 0; x < n; ++x) {
        if (!(a & (1u << x))) continue;
        for (int t = 0; t < x; ++t) inv += (b >> t) & 1u;
      }
      y.add_entry(pos[a | b], i * d + j, Scalar(inv % 2 ? -1 : 1));
    }
  }
  VertexAlgebraData out;
  out.space = make_space(g, basis);
  out.gamma0 = GroupElement::zero(g);
  out.beta = BetaSpec::sign_bilinear({{1}});
  out.window = {-1, -1};
  out.ops.emplace(-1, std::move(y));
  out.vacuum = SparseVector::basis(0);
  return out;
}

VertexAlgebraData trivial_algebra() { return from_differential_algebra(truncated_polynomial(1)); }

ModuleData free_module(const std::shared_ptr<const VertexAlgebraData>& a, int rank) {
  if (rank < 0) throw BuilderError("rank must be non-negative");
  const Index d = a->space->dim();
  const Index r = static_cast<Index>(rank);
  std::vector<BasisElement> basis;
  for (Index c = 0; c < r; ++c) {
    for (Index i = 0; i < d; ++i) basis.push_back({a->space->label(i) + "#" + std::to_string(c + 1), a->space->degree(i)});
  }
  ModuleData m;
  m.algebra = a;
  m.mspace = make_space(a->space->spec(), basis);
  m.window = a->window;
  const Index dm = d * r;
  for (const auto& [n, f] : a->ops) {
    LinearMap y(d * dm, dm);
    for (Index u = 0; u < d; ++u) {
      for (Index c = 0; c < r; ++c) {
        for (Index v = 0; v < d; ++v) {
          for (const auto& [k, x] : f.column(u * d + v)) y.add_entry(c * d + k, u * dm + c * d + v, x);
        }
      }
    }
    m.mops.emplace(n, std::move(y));
  }
  LinearMap D = derive_D(*a);
  LinearMap dmap(dm, dm);
  for (Index c = 0; c < r; ++c) {
    for (Index v = 0; v < d; ++v) {
      for (const auto& [k, x] : D.column(v)) dmap.add_entry(c * d + k, c * d + v, x);
    }
  }
  m.d_m = std::move(dmap);
  return m;
}

ModuleData adjoint_module(const std::shared_ptr<const VertexAlgebraData>& a) {
  ModuleData m;
  m.algebra = a;
  m.mspace = a->space;
  m.window = a->window;
  m.mops = a->ops;
  m.d_m = derive_D(*a);
  return m;
}

namespace {

struct Example {
  std::string name;
  Structure (*make)();
};

std::shared_ptr<const VertexAlgebraData> shared(VertexAlgebraData a) {
  return std::make_shared<const VertexAlgebraData>(std::move(a));
}

VertexAlgebraData diff_eps3() { return from_differential_algebra(truncated_polynomial(3)); }
VertexAlgebraData zero_beta() { return from_associative_with_derivation(upper_triangular()); }

const std::vector<Example>& registry() {
  static const std::vector<Example> r = {
      {"trivial", [] { return Structure::of(trivial_algebra()); }},
      {"diff-eps3", [] { return Structure::of(diff_eps3()); }},
      {"diff-eps4", [] { return Structure::of(from_differential_algebra(truncated_polynomial(4))); }},
      {"dzero", [] { return Structure::of(from_differential_algebra(truncated_polynomial(2, true))); }},
      {"zero-beta", [] { return Structure::of(zero_beta()); }},
      {"exterior1", [] { return Structure::of(exterior_example(1)); }},
      {"exterior2", [] { return Structure::of(exterior_example(2)); }},
      {"exterior3", [] { return Structure::of(exterior_example(3)); }},
      {"adjoint-diff-eps3", [] { return Structure::of(adjoint_module(shared(diff_eps3()))); }},
      {"free2-diff-eps3", [] { return Structure::of(free_module(shared(diff_eps3()), 2)); }},
      {"adjoint-exterior2", [] { return Structure::of(adjoint_module(shared(exterior_example(2)))); }},
      {"free2-exterior2", [] { return Structure::of(free_module(shared(exterior_example(2)), 2)); }},
      {"free1-zero-beta", [] { return Structure::of(free_module(shared(zero_beta()), 1)); }},
      {"dual-diff-eps3", [] { return Structure::of(dualize_algebra(diff_eps3()).first); }},
      {"dual-exterior2", [] { return Structure::of(dualize_algebra(exterior_example(2)).first); }},
      {"dual-adjoint-diff-eps3",
       [] { return Structure::of(dualize_module(adjoint_module(shared(diff_eps3()))).first); }},
      {"dual-free2-exterior2",
       [] { return Structure::of(dualize_module(free_module(shared(exterior_example(2)), 2)).first); }},
  };
  return r;
}

}  // namespace

std::vector<std::string> example_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.name);
  return out;
}

Structure make_example(const std::string& name) {
  for (const auto& e : registry()) {
    if (e.name == name) return e.make();
  }
  throw BuilderError("unknown example '" + name + "'");
}

}  // namespace vakit
