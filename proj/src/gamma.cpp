#include "vakit/gamma.hpp"

#include <set>
#include <sstream>

#include "vakit/graded.hpp"
#include "vakit/parallel.hpp"

namespace vakit {

// ---------------------------------------------------------------- GroupElement

namespace {

std::int64_t reduce_mod(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

}  // namespace

GroupElement::GroupElement(const GroupSpec& spec, std::vector<std::int64_t> coords)
    : coords_(std::move(coords)), moduli_(spec.rank(), 0) {
  if (coords_.size() != spec.rank()) {
    throw GroupError("group element has " + std::to_string(coords_.size()) + " coordinates, expected " +
                     std::to_string(spec.rank()));
  }
  for (std::size_t t = 0; t < spec.torsion.size(); ++t) {
    std::size_t i = static_cast<std::size_t>(spec.free_rank) + t;
    moduli_[i] = spec.torsion[t];
    coords_[i] = reduce_mod(coords_[i], moduli_[i]);
  }
}

GroupElement GroupElement::zero(const GroupSpec& spec) {
  return GroupElement(spec, std::vector<std::int64_t>(spec.rank(), 0));
}

bool GroupElement::is_zero() const {
  for (auto c : coords_) {
    if (c != 0) return false;
  }
  return true;
}

void GroupElement::check(const GroupElement& o) const {
  if (moduli_ != o.moduli_) throw GroupError("group element spec mismatch");
}

GroupElement GroupElement::operator+(const GroupElement& o) const {
  check(o);
  GroupElement r(*this);
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    r.coords_[i] += o.coords_[i];
    if (moduli_[i] != 0) r.coords_[i] = reduce_mod(r.coords_[i], moduli_[i]);
  }
  return r;
}

GroupElement GroupElement::operator-() const {
  GroupElement r(*this);
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    r.coords_[i] = -r.coords_[i];
    if (moduli_[i] != 0) r.coords_[i] = reduce_mod(r.coords_[i], moduli_[i]);
  }
  return r;
}

GroupElement GroupElement::operator-(const GroupElement& o) const { return *this + (-o); }

GroupElement GroupElement::scaled(std::int64_t k) const {
  GroupElement r(*this);
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    r.coords_[i] *= k;
    if (moduli_[i] != 0) r.coords_[i] = reduce_mod(r.coords_[i], moduli_[i]);
  }
  return r;
}

std::string GroupElement::str() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out << ",";
    out << coords_[i];
  }
  out << ")";
  return out.str();
}

// ---------------------------------------------------------------- BetaSpec

BetaSpec BetaSpec::one() { return BetaSpec(); }

BetaSpec BetaSpec::zero() {
  BetaSpec b;
  b.kind_ = Kind::Zero;
  return b;
}

BetaSpec BetaSpec::sign_bilinear(IntMatrix form) {
  BetaSpec b;
  b.kind_ = Kind::SignBilinear;
  b.form_ = std::move(form);
  return b;
}

BetaSpec BetaSpec::q_bilinear(Scalar q, IntMatrix form) {
  if (q.is_zero()) throw GroupError("QBilinear: q must be a root of unity");
  BetaSpec b;
  b.kind_ = Kind::QBilinear;
  b.q_ = std::move(q);
  b.form_ = std::move(form);
  return b;
}

BetaSpec BetaSpec::table(std::map<std::pair<GroupElement, GroupElement>, Scalar> entries) {
  BetaSpec b;
  b.kind_ = Kind::Table;
  b.table_ = std::move(entries);
  return b;
}

BetaSpec BetaSpec::product(std::vector<BetaSpec> factors) {
  BetaSpec b;
  b.kind_ = Kind::Product;
  b.factors_ = std::move(factors);
  return b;
}

std::int64_t BetaSpec::pairing(const GroupElement& a, const GroupElement& b) const {
  const auto& x = a.coords();
  const auto& y = b.coords();
  if (form_.size() != x.size() || x.size() != y.size()) {
    throw GroupError("beta form is " + std::to_string(form_.size()) + "x" + std::to_string(form_.size()) +
                     " but the group has rank " + std::to_string(x.size()));
  }
  std::int64_t s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (form_[i].size() != y.size()) throw GroupError("beta form is not square");
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * form_[i][j] * y[j];
  }
  return s;
}

Scalar BetaSpec::operator()(const GroupElement& a, const GroupElement& b) const {
  switch (kind_) {
    case Kind::One:
      return Scalar(1);
    case Kind::Zero:
      return Scalar(0);
    case Kind::SignBilinear:
      return Scalar((pairing(a, b) % 2 == 0) ? 1 : -1);
    case Kind::QBilinear:
      return q_.pow(pairing(a, b));
    case Kind::Table: {
      auto it = table_.find({a, b});
      if (it == table_.end()) throw GroupError("beta table has no entry for " + a.str() + ", " + b.str());
      return it->second;
    }
    case Kind::Product: {
      Scalar s(1);
      for (const auto& f : factors_) s *= f(a, b);
      return s;
    }
  }
  return Scalar(0);
}

namespace {

std::string form_str(const IntMatrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out << ",";
    out << "[";
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      if (j) out << ",";
      out << m[i][j];
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

}  // namespace

std::string BetaSpec::describe() const {
  switch (kind_) {
    case Kind::One: return "one";
    case Kind::Zero: return "zero";
    case Kind::SignBilinear: return "sign_bilinear " + form_str(form_);
    case Kind::QBilinear: return "q_bilinear (" + q_.str() + ") " + form_str(form_);
    case Kind::Table: return "table (" + std::to_string(table_.size()) + " entries)";
    case Kind::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? ", " : "") + factors_[i].describe();
      return s + ")";
    }
  }
  return "?";
}

bool operator==(const BetaSpec& a, const BetaSpec& b) {
  return a.kind_ == b.kind_ && a.form_ == b.form_ && a.q_ == b.q_ && a.table_ == b.table_ &&
         a.factors_ == b.factors_;
}

BetaTable::BetaTable(const BetaSpec& beta, const std::vector<GroupElement>& degrees) : beta_(beta) {
  for (const auto& a : degrees) {
    for (const auto& b : degrees) {
      try {
        cache_.emplace(std::make_pair(a, b), beta_(a, b));
      } catch (const GroupError&) {
        // Table misses surface on lookup.
      }
    }
  }
}

Scalar BetaTable::operator()(const GroupElement& a, const GroupElement& b) const {
  auto it = cache_.find({a, b});
  if (it != cache_.end()) return it->second;
  return beta_(a, b);
}

// ---------------------------------------------------------------- relations

const std::vector<RelationKind>& all_relations() {
  static const std::vector<RelationKind> all = {
      RelationKind::Parity,     RelationKind::Multiplicative, RelationKind::Cocycle,
      RelationKind::UnitRight,  RelationKind::InverseSym,     RelationKind::Shift2Gamma0,
      RelationKind::Unit2Gamma0Left};
  return all;
}

std::string relation_id(RelationKind r) {
  switch (r) {
    case RelationKind::Parity: return "parity";
    case RelationKind::Multiplicative: return "multiplicative";
    case RelationKind::Cocycle: return "cocycle";
    case RelationKind::UnitRight: return "unit_right";
    case RelationKind::InverseSym: return "inverse_sym";
    case RelationKind::Shift2Gamma0: return "shift_2gamma0";
    case RelationKind::Unit2Gamma0Left: return "unit_2gamma0_left";
  }
  return "?";
}

namespace {

std::string relation_anchor(RelationKind r) {
  switch (r) {
    case RelationKind::Parity: return "beta_parity";
    case RelationKind::Multiplicative: return "beta_multiplicative";
    case RelationKind::Cocycle: return "beta_cocycle";
    case RelationKind::UnitRight: return "beta_unit_right";
    case RelationKind::InverseSym: return "beta_inverse_symmetric";
    case RelationKind::Shift2Gamma0: return "beta_shift_2gamma0";
    case RelationKind::Unit2Gamma0Left: return "beta_unit_2gamma0";
  }
  return "";
}

std::size_t relation_arity(RelationKind r) {
  switch (r) {
    case RelationKind::Parity:
    case RelationKind::InverseSym:
    case RelationKind::Shift2Gamma0:
      return 2;
    case RelationKind::Multiplicative:
    case RelationKind::Cocycle:
      return 3;
    case RelationKind::UnitRight:
    case RelationKind::Unit2Gamma0Left:
      return 1;
  }
  return 1;
}

struct RelationSides {
  Scalar lhs;
  Scalar rhs;
  Scalar lhs2;  // second equation for Unit2Gamma0Left
  Scalar rhs2;
};

RelationSides eval_relation(const BetaSpec& b, RelationKind r, const std::vector<GroupElement>& g,
                            const GroupElement& g0) {
  RelationSides s;
  switch (r) {
    case RelationKind::Parity:
      s.lhs = b(g[0], g[1]);
      s.rhs = b(-g[0], -g[1]);
      break;
    case RelationKind::Multiplicative:
      s.lhs = b(g[0], g[1]) * b(g[0], g[2]);
      s.rhs = b(g[0], g[1] + g[2]);
      break;
    case RelationKind::Cocycle:
      s.lhs = b(g[0], g[1]) * b(g[0] + g[1], g[2]);
      s.rhs = b(g[1], g[2]) * b(g[0], g[1] + g[2]);
      break;
    case RelationKind::UnitRight:
      s.lhs = b(g[0], g[0].scaled(0));
      s.rhs = Scalar(1);
      break;
    case RelationKind::InverseSym:
      s.lhs = b(g[0], g[1]) * b(g[1], g[0]);
      s.rhs = Scalar(1);
      break;
    case RelationKind::Shift2Gamma0:
      s.lhs = b(g[0], g[1]);
      s.rhs = b(g[0], g[1] - g0.scaled(2));
      break;
    case RelationKind::Unit2Gamma0Left:
      s.lhs = b(-g0.scaled(2), g[0]);
      s.rhs = Scalar(1);
      s.lhs2 = b(g0.scaled(2), g[0]);
      s.rhs2 = Scalar(1);
      break;
  }
  return s;
}

}  // namespace

std::vector<GroupElement> group_box(const GroupSpec& spec,
                                    const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges) {
  if (ranges.size() != static_cast<std::size_t>(spec.free_rank)) {
    throw GroupError("group_box: one range per free coordinate required");
  }
  std::vector<std::pair<std::int64_t, std::int64_t>> all = ranges;
  for (auto m : spec.torsion) all.emplace_back(0, m - 1);
  std::vector<GroupElement> out;
  std::vector<std::int64_t> cur(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].first > all[i].second) return out;
    cur[i] = all[i].first;
  }
  for (;;) {
    out.emplace_back(spec, cur);
    std::size_t k = all.size();
    while (k > 0) {
      --k;
      if (cur[k] < all[k].second) {
        ++cur[k];
        break;
      }
      cur[k] = all[k].first;
      if (k == 0) return out;
    }
    if (all.empty()) return out;
  }
}

std::vector<GroupElement> group_box(const GroupSpec& spec, std::int64_t radius) {
  std::vector<std::pair<std::int64_t, std::int64_t>> r(spec.free_rank, {-radius, radius});
  return group_box(spec, r);
}

AxiomResult check_beta_relation(const BetaSpec& beta, RelationKind relation,
                                const std::vector<GroupElement>& domain, const GroupElement& gamma0) {
  if (domain.empty()) throw GroupError("check_beta_relation: empty domain");
  const std::size_t arity = relation_arity(relation);
  const std::size_t d = domain.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < arity; ++k) total *= d;
  auto decode = [&](std::size_t flat) {
    std::vector<GroupElement> g(arity);
    for (std::size_t k = arity; k-- > 0;) {
      g[k] = domain[flat % d];
      flat /= d;
    }
    return g;
  };
  auto fails = [&](std::size_t flat) {
    auto s = eval_relation(beta, relation, decode(flat), gamma0);
    return s.lhs != s.rhs || s.lhs2 != s.rhs2;
  };
  AxiomResult r;
  r.id = relation_id(relation);
  r.anchor = relation_anchor(relation);
  r.cases = total;
  auto bad = first_failure(total, fails);
  if (!bad) return r;
  r.verdict = Verdict::Fail;
  auto g = decode(*bad);
  auto s = eval_relation(beta, relation, g, gamma0);
  Witness w;
  for (const auto& x : g) w.basis.push_back(x.str());
  if (s.lhs != s.rhs) {
    w.lhs = s.lhs.str();
    w.rhs = s.rhs.str();
  } else {
    w.lhs = s.lhs2.str();
    w.rhs = s.rhs2.str();
    r.detail = "beta(2*gamma0, gamma) != 1";
  }
  r.witness = w;
  return r;
}

CheckReport check_beta_relations(const BetaSpec& beta, const std::vector<GroupElement>& domain,
                                 const GroupElement& gamma0) {
  CheckReport rep;
  rep.suite = "beta";
  for (auto rel : all_relations()) rep.add(check_beta_relation(beta, rel, domain, gamma0));
  return rep;
}

CheckReport check_cactus(const BetaSpec& beta, const GradedSpace& u, const GradedSpace& v,
                         const GradedSpace& w) {
  CheckReport rep;
  rep.suite = "cactus";
  // Cocycle on the degree triples that occur.
  auto su = u.support();
  auto sv = v.support();
  auto sw = w.support();
  AxiomResult pre;
  pre.id = "cocycle_on_support";
  pre.anchor = "beta_cocycle";
  for (const auto& a : su) {
    for (const auto& b : sv) {
      for (const auto& c : sw) {
        ++pre.cases;
        Scalar lhs = beta(a, b) * beta(a + b, c);
        Scalar rhs = beta(b, c) * beta(a, b + c);
        if (lhs != rhs && !pre.witness) {
          pre.verdict = Verdict::Precondition;
          pre.witness = Witness{{a.str(), b.str(), c.str()}, {}, lhs.str(), rhs.str()};
        }
      }
    }
  }
  rep.add(pre);
  AxiomResult r;
  r.id = "cactus";
  r.anchor = "cactus_relation";
  if (pre.verdict != Verdict::Pass) {
    r.verdict = Verdict::Precondition;
    r.detail = "beta fails the cocycle relation on the supports";
    rep.add(r);
    return rep;
  }
  // Both sides send u|v|w to a multiple of w|v|u.
  for (Index i = 0; i < u.dim(); ++i) {
    for (Index j = 0; j < v.dim(); ++j) {
      for (Index k = 0; k < w.dim(); ++k) {
        ++r.cases;
        const auto &a = u.degree(i), &b = v.degree(j), &c = w.degree(k);
        Scalar lhs = beta(a, b) * beta(b + a, c);
        Scalar rhs = beta(b, c) * beta(a, c + b);
        if (lhs != rhs && r.verdict == Verdict::Pass) {
          r.verdict = Verdict::Fail;
          std::string out = w.label(k) + "|" + v.label(j) + "|" + u.label(i);
          r.witness = Witness{{u.label(i), v.label(j), w.label(k)}, {}, lhs.str() + "*" + out,
                              rhs.str() + "*" + out};
        }
      }
    }
  }
  rep.add(r);
  return rep;
}

}  // namespace vakit
