#include "vakit/graded.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace vakit {

// ---------------------------------------------------------------- SparseVector

SparseVector SparseVector::basis(Index i, const Scalar& c) {
  SparseVector v;
  v.add(i, c);
  return v;
}

void SparseVector::add(Index i, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m_.try_emplace(i, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) m_.erase(it);
}

void SparseVector::set(Index i, const Scalar& c) {
  if (c.is_zero()) {
    m_.erase(i);
  } else {
    m_[i] = c;
  }
}

void SparseVector::add_scaled(const SparseVector& v, const Scalar& c) {
  if (c.is_zero()) return;
  if (c.is_one()) {
    *this += v;
    return;
  }
  for (const auto& [i, x] : v.m_) add(i, x * c);
}

SparseVector SparseVector::scaled(const Scalar& c) const {
  SparseVector r;
  if (c.is_zero()) return r;
  for (const auto& [i, x] : m_) r.m_.emplace_hint(r.m_.end(), i, x * c);
  return r;
}

Scalar SparseVector::get(Index i) const {
  auto it = m_.find(i);
  return it == m_.end() ? Scalar(0) : it->second;
}

SparseVector& SparseVector::operator+=(const SparseVector& o) {
  for (const auto& [i, x] : o.m_) add(i, x);
  return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& o) {
  for (const auto& [i, x] : o.m_) add(i, -x);
  return *this;
}

// ---------------------------------------------------------------- GradedSpace

GradedSpace::GradedSpace(GroupSpec spec, std::vector<BasisElement> basis)
    : spec_(std::move(spec)), basis_(std::move(basis)) {
  for (Index i = 0; i < basis_.size(); ++i) {
    if (basis_[i].degree.coords().size() != spec_.rank()) {
      throw std::invalid_argument("basis element '" + basis_[i].label + "' has a degree of wrong rank");
    }
    if (!by_label_.emplace(basis_[i].label, i).second) {
      throw std::invalid_argument("duplicate basis label '" + basis_[i].label + "'");
    }
  }
}

std::optional<Index> GradedSpace::find(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

Index GradedSpace::index_of(const std::string& label) const {
  auto i = find(label);
  if (!i) throw std::out_of_range("unknown basis label '" + label + "'");
  return *i;
}

std::vector<GroupElement> GradedSpace::support() const {
  std::set<GroupElement> s;
  for (const auto& b : basis_) s.insert(b.degree);
  return {s.begin(), s.end()};
}

std::vector<Index> GradedSpace::component(const GroupElement& g) const {
  std::vector<Index> out;
  for (Index i = 0; i < basis_.size(); ++i) {
    if (basis_[i].degree == g) out.push_back(i);
  }
  return out;
}

std::map<GroupElement, SparseVector> GradedSpace::split(const SparseVector& v) const {
  std::map<GroupElement, SparseVector> out;
  for (const auto& [i, c] : v) out[degree(i)].add(i, c);
  return out;
}

std::string render_coefficient(const Scalar& c) {
  if (c.is_rational()) return c.str();
  return "(" + c.str() + ")";
}

std::string GradedSpace::render(const SparseVector& v) const {
  if (v.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [i, c] : v) {
    std::string lab = i < dim() ? label(i) : ("#" + std::to_string(i));
    bool neg = c.is_rational() && c.rational() < 0;
    Scalar mag = neg ? -c : c;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    if (!mag.is_one()) out << render_coefficient(mag) << "*";
    out << lab;
  }
  return out.str();
}

bool operator==(const GradedSpace& a, const GradedSpace& b) {
  if (!(a.spec_ == b.spec_) || a.basis_.size() != b.basis_.size()) return false;
  for (Index i = 0; i < a.basis_.size(); ++i) {
    if (a.basis_[i].label != b.basis_[i].label || !(a.basis_[i].degree == b.basis_[i].degree)) return false;
  }
  return true;
}

GradedSpace tensor(const GradedSpace& v, const GradedSpace& w) {
  if (!(v.spec() == w.spec())) throw std::invalid_argument("tensor: group spec mismatch");
  std::vector<BasisElement> basis;
  basis.reserve(v.dim() * w.dim());
  for (Index i = 0; i < v.dim(); ++i) {
    for (Index j = 0; j < w.dim(); ++j) {
      basis.push_back({v.label(i) + "|" + w.label(j), v.degree(i) + w.degree(j)});
    }
  }
  return GradedSpace(v.spec(), std::move(basis));
}

GradedSpace restricted_dual(const GradedSpace& v) {
  std::vector<BasisElement> basis;
  basis.reserve(v.dim());
  for (const auto& b : v.basis()) basis.push_back({b.label + "'", -b.degree});
  return GradedSpace(v.spec(), std::move(basis));
}

GradedSpace ground_field(const GroupSpec& spec, const GroupElement* degree) {
  GroupElement d = degree ? *degree : GroupElement::zero(spec);
  return GradedSpace(spec, {{"1", d}});
}

GradedSpace internal_hom(const GradedSpace& v, const GradedSpace& w) {
  return tensor(restricted_dual(v), w);
}

// ---------------------------------------------------------------- LinearMap

LinearMap::LinearMap(Index source_dim, Index target_dim) : target_dim_(target_dim), cols_(source_dim) {}

LinearMap LinearMap::identity(Index n) {
  LinearMap m(n, n);
  for (Index i = 0; i < n; ++i) m.cols_[i].add(i, Scalar(1));
  return m;
}

void LinearMap::set_column(Index j, SparseVector v) {
  for (const auto& [i, c] : v) {
    (void)c;
    if (i >= target_dim_) throw std::out_of_range("LinearMap: row index out of range");
  }
  cols_.at(j) = std::move(v);
}

void LinearMap::add_entry(Index row, Index col, const Scalar& c) {
  if (row >= target_dim_) throw std::out_of_range("LinearMap: row index out of range");
  cols_.at(col).add(row, c);
}

SparseVector LinearMap::apply(const SparseVector& x) const {
  SparseVector out;
  for (const auto& [j, c] : x) out.add_scaled(cols_.at(j), c);
  return out;
}

bool LinearMap::is_zero() const {
  for (const auto& c : cols_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::size_t LinearMap::nnz() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.nnz();
  return n;
}

LinearMap LinearMap::transpose() const {
  LinearMap t(target_dim_, cols_.size());
  for (Index j = 0; j < cols_.size(); ++j) {
    for (const auto& [i, c] : cols_[j]) t.cols_[i].add(j, c);
  }
  return t;
}

LinearMap compose(const LinearMap& g, const LinearMap& f) {
  if (f.target_dim() != g.source_dim()) throw std::invalid_argument("compose: dimension mismatch");
  LinearMap out(f.source_dim(), g.target_dim());
  for (Index j = 0; j < f.source_dim(); ++j) out.set_column(j, g.apply(f.column(j)));
  return out;
}

LinearMap scaled(const LinearMap& f, const Scalar& c) {
  LinearMap out(f.source_dim(), f.target_dim());
  for (Index j = 0; j < f.source_dim(); ++j) out.set_column(j, f.column(j).scaled(c));
  return out;
}

LinearMap operator+(const LinearMap& a, const LinearMap& b) {
  if (a.source_dim() != b.source_dim() || a.target_dim() != b.target_dim()) {
    throw std::invalid_argument("LinearMap sum: dimension mismatch");
  }
  LinearMap out(a.source_dim(), a.target_dim());
  for (Index j = 0; j < a.source_dim(); ++j) out.set_column(j, a.column(j) + b.column(j));
  return out;
}

bool Matrix::is_identity() const {
  if (rows != cols) return false;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      if (at(r, c) != Scalar(r == c ? 1 : 0)) return false;
    }
  }
  return true;
}

std::map<GroupElement, Matrix> GradedMap::blocks() const {
  std::map<GroupElement, Matrix> out;
  for (const auto& g : source->support()) {
    auto src = source->component(g);
    auto tgt = target->component(g + degree);
    Matrix m(tgt.size(), src.size());
    for (Index c = 0; c < src.size(); ++c) {
      for (Index r = 0; r < tgt.size(); ++r) m.at(r, c) = map.entry(tgt[r], src[c]);
    }
    out.emplace(g, std::move(m));
  }
  return out;
}

std::optional<Index> GradedMap::inhomogeneous_column() const {
  for (Index j = 0; j < map.source_dim(); ++j) {
    GroupElement want = source->degree(j) + degree;
    for (const auto& [i, c] : map.column(j)) {
      (void)c;
      if (!(target->degree(i) == want)) return j;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- tensor helpers

SparseVector apply_left(const LinearMap& f, const SparseVector& x, Index right_dim) {
  SparseVector out;
  for (const auto& [idx, c] : x) {
    Index a = idx / right_dim;
    Index b = idx % right_dim;
    for (const auto& [a2, y] : f.column(a)) out.add(a2 * right_dim + b, c * y);
  }
  return out;
}

SparseVector apply_right(const LinearMap& g, const SparseVector& x, Index right_dim) {
  SparseVector out;
  const Index tdim = g.target_dim();
  for (const auto& [idx, c] : x) {
    Index a = idx / right_dim;
    Index b = idx % right_dim;
    for (const auto& [b2, y] : g.column(b)) out.add(a * tdim + b2, c * y);
  }
  return out;
}

SparseVector tensor_vectors(const SparseVector& a, const SparseVector& b, Index dim_b) {
  SparseVector out;
  for (const auto& [i, x] : a) {
    for (const auto& [j, y] : b) out.add(i * dim_b + j, x * y);
  }
  return out;
}

SparseVector swap_beta(const SparseVector& x, const GradedSpace& a, const GradedSpace& b,
                       const BetaTable& beta) {
  SparseVector out;
  const Index db = b.dim();
  const Index da = a.dim();
  for (const auto& [idx, c] : x) {
    Index i = idx / db;
    Index j = idx % db;
    out.add(j * da + i, c * beta(a.degree(i), b.degree(j)));
  }
  return out;
}

namespace {

std::vector<GroupElement> merged_support(const std::vector<const GradedSpace*>& spaces) {
  std::set<GroupElement> s;
  for (const auto* sp : spaces) {
    for (const auto& g : sp->support()) s.insert(g);
  }
  return {s.begin(), s.end()};
}

}  // namespace

GradedMap t_beta(const SpacePtr& v, const SpacePtr& w, const BetaSpec& beta) {
  BetaTable table(beta, merged_support({v.get(), w.get()}));
  auto src = make_space(tensor(*v, *w));
  auto tgt = make_space(tensor(*w, *v));
  LinearMap m(src->dim(), tgt->dim());
  for (Index i = 0; i < v->dim(); ++i) {
    for (Index j = 0; j < w->dim(); ++j) {
      m.add_entry(j * v->dim() + i, i * w->dim() + j, table(v->degree(i), w->degree(j)));
    }
  }
  return {src, tgt, GroupElement::zero(v->spec()), std::move(m)};
}

GradedMap xi_beta(const SpacePtr& v, const BetaSpec& beta) {
  BetaTable table(beta, v->support());
  auto vv = tensor(*v, *v);
  auto vvv = make_space(tensor(vv, *v));
  const Index d = v->dim();
  LinearMap m(vvv->dim(), vvv->dim());
  for (Index a = 0; a < d; ++a) {
    for (Index b = 0; b < d; ++b) {
      for (Index c = 0; c < d; ++c) {
        Scalar s = table(v->degree(a), v->degree(b)) * table(v->degree(a), v->degree(c));
        m.add_entry((b * d + c) * d + a, (a * d + b) * d + c, s);
      }
    }
  }
  return {vvv, vvv, GroupElement::zero(v->spec()), std::move(m)};
}

// ---------------------------------------------------------------- echelon

bool EchelonBasis::insert(SparseVector v) {
  v = reduce(std::move(v));
  if (v.is_zero()) return false;
  Index p = v.last_index();
  Scalar inv = v.get(p).inverse();
  v = v.scaled(inv);
  for (auto& [q, row] : rows_) {
    Scalar c = row.get(p);
    if (!c.is_zero()) row.add_scaled(v, -c);
  }
  rows_.emplace(p, std::move(v));
  return true;
}

SparseVector EchelonBasis::reduce(SparseVector v) const {
  for (const auto& [p, row] : rows_) {
    Scalar c = v.get(p);
    if (!c.is_zero()) v.add_scaled(row, -c);
  }
  return v;
}

std::vector<SparseVector> EchelonBasis::vectors() const {
  std::vector<SparseVector> out;
  for (const auto& [p, row] : rows_) out.push_back(row);
  return out;
}

std::vector<Index> EchelonBasis::pivots() const {
  std::vector<Index> out;
  for (const auto& [p, row] : rows_) out.push_back(p);
  return out;
}

std::vector<SparseVector> nullspace(const std::vector<SparseVector>& columns) {
  // Rows carry (vector, combination); a column that reduces to zero yields a relation.
  struct Row {
    SparseVector vec;
    SparseVector combo;
  };
  std::map<Index, Row> rows;
  EchelonBasis relations;
  for (Index j = 0; j < columns.size(); ++j) {
    SparseVector v = columns[j];
    SparseVector combo = SparseVector::basis(j);
    for (const auto& [p, row] : rows) {
      Scalar c = v.get(p);
      if (c.is_zero()) continue;
      v.add_scaled(row.vec, -c);
      combo.add_scaled(row.combo, -c);
    }
    if (v.is_zero()) {
      relations.insert(std::move(combo));
      continue;
    }
    Index p = v.last_index();
    Scalar inv = v.get(p).inverse();
    v = v.scaled(inv);
    combo = combo.scaled(inv);
    for (auto& [q, row] : rows) {
      Scalar c = row.vec.get(p);
      if (c.is_zero()) continue;
      row.vec.add_scaled(v, -c);
      row.combo.add_scaled(combo, -c);
    }
    rows.emplace(p, Row{std::move(v), std::move(combo)});
  }
  return relations.vectors();
}

// ---------------------------------------------------------------- subspaces

GradedSubspace GradedSubspace::span(SpacePtr ambient, const std::vector<SparseVector>& vectors) {
  GradedSubspace s(std::move(ambient));
  for (const auto& v : vectors) {
    for (auto& [g, part] : s.ambient_->split(v)) s.comps_[g].insert(std::move(part));
  }
  for (auto it = s.comps_.begin(); it != s.comps_.end();) {
    it = it->second.dim() == 0 ? s.comps_.erase(it) : std::next(it);
  }
  return s;
}

GradedSubspace GradedSubspace::whole(SpacePtr ambient) {
  std::vector<SparseVector> vs;
  for (Index i = 0; i < ambient->dim(); ++i) vs.push_back(SparseVector::basis(i));
  return span(std::move(ambient), vs);
}

Index GradedSubspace::dim() const {
  Index n = 0;
  for (const auto& [g, e] : comps_) n += e.dim();
  return n;
}

Index GradedSubspace::dim_at(const GroupElement& g) const {
  auto it = comps_.find(g);
  return it == comps_.end() ? 0 : it->second.dim();
}

std::vector<SparseVector> GradedSubspace::basis() const {
  std::vector<SparseVector> out;
  for (const auto& [g, e] : comps_) {
    for (auto& v : e.vectors()) out.push_back(std::move(v));
  }
  return out;
}

std::vector<GroupElement> GradedSubspace::basis_degrees() const {
  std::vector<GroupElement> out;
  for (const auto& [g, e] : comps_) out.insert(out.end(), e.dim(), g);
  return out;
}

std::vector<Index> GradedSubspace::pivots() const {
  std::vector<Index> out;
  for (const auto& [g, e] : comps_) {
    for (Index p : e.pivots()) out.push_back(p);
  }
  return out;
}

SparseVector GradedSubspace::reduce(const SparseVector& v) const {
  SparseVector out;
  for (auto& [g, part] : ambient_->split(v)) {
    auto it = comps_.find(g);
    out += it == comps_.end() ? part : it->second.reduce(part);
  }
  return out;
}

bool GradedSubspace::contains(const SparseVector& v) const { return reduce(v).is_zero(); }

SparseVector GradedSubspace::coordinates(const SparseVector& v) const {
  SparseVector out;
  Index k = 0;
  for (const auto& [g, e] : comps_) {
    for (Index p : e.pivots()) out.add(k++, v.get(p));
  }
  return out;
}

GradedSpace GradedSubspace::as_space() const {
  std::vector<BasisElement> basis;
  for (const auto& [g, e] : comps_) {
    for (Index p : e.pivots()) basis.push_back({"{" + ambient_->label(p) + "}", g});
  }
  return GradedSpace(ambient_->spec(), std::move(basis));
}

bool operator==(const GradedSubspace& a, const GradedSubspace& b) {
  if (a.ambient_->dim() != b.ambient_->dim()) return false;
  return a.comps_ == b.comps_;
}

GradedSubspace image(const GradedMap& f) {
  std::vector<SparseVector> cols;
  for (Index j = 0; j < f.map.source_dim(); ++j) cols.push_back(f.map.column(j));
  return GradedSubspace::span(f.target, cols);
}

GradedSubspace kernel(const GradedMap& f) {
  std::vector<SparseVector> out;
  for (const auto& g : f.source->support()) {
    auto comp = f.source->component(g);
    std::vector<SparseVector> cols;
    for (Index j : comp) cols.push_back(f.map.column(j));
    for (const auto& rel : nullspace(cols)) {
      SparseVector v;
      for (const auto& [k, c] : rel) v.add(comp[k], c);
      out.push_back(std::move(v));
    }
  }
  return GradedSubspace::span(f.source, out);
}

GradedSubspace intersect(const GradedSubspace& a, const GradedSubspace& b) {
  std::vector<SparseVector> out;
  for (const auto& [g, ea] : a.components()) {
    auto it = b.components().find(g);
    if (it == b.components().end()) continue;
    auto va = ea.vectors();
    auto vb = it->second.vectors();
    std::vector<SparseVector> cols = va;
    for (const auto& v : vb) cols.push_back(v.scaled(Scalar(-1)));
    for (const auto& rel : nullspace(cols)) {
      SparseVector x;
      for (const auto& [k, c] : rel) {
        if (k < va.size()) x.add_scaled(va[k], c);
      }
      out.push_back(std::move(x));
    }
  }
  return GradedSubspace::span(a.ambient(), out);
}

GradedSubspace tensor_subspace(const GradedSubspace& w1, const GradedSubspace& w2, SpacePtr ambient) {
  const Index d2 = w2.ambient()->dim();
  std::vector<SparseVector> vs;
  for (const auto& x : w1.basis()) {
    for (const auto& y : w2.basis()) vs.push_back(tensor_vectors(x, y, d2));
  }
  return GradedSubspace::span(std::move(ambient), vs);
}

GradedSubspace intersect_tensor(const GradedSubspace& w1, const GradedSubspace& w2, SpacePtr ambient) {
  auto full1 = GradedSubspace::whole(w1.ambient());
  auto full2 = GradedSubspace::whole(w2.ambient());
  auto left = tensor_subspace(w1, full2, ambient);
  auto right = tensor_subspace(full1, w2, ambient);
  return intersect(left, right);
}

// ---------------------------------------------------------------- quotient

SparseVector Quotient::project(const SparseVector& v) const {
  SparseVector r = sub.reduce(v);
  SparseVector out;
  for (const auto& [i, c] : r) out.add(carrier_index.at(i), c);
  return out;
}

SparseVector Quotient::lift(const SparseVector& x) const {
  SparseVector out;
  for (const auto& [k, c] : x) out.add(reps.at(k), c);
  return out;
}

Quotient quotient(const GradedSubspace& w) {
  Quotient q;
  q.sub = w;
  const auto& amb = *w.ambient();
  std::set<Index> piv;
  for (Index p : w.pivots()) piv.insert(p);
  std::vector<BasisElement> basis;
  for (const auto& g : amb.support()) {
    for (Index i : amb.component(g)) {
      if (piv.count(i)) continue;
      q.carrier_index.emplace(i, q.reps.size());
      q.reps.push_back(i);
      basis.push_back({"[" + amb.label(i) + "]", g});
    }
  }
  q.carrier = make_space(amb.spec(), std::move(basis));
  return q;
}

}  // namespace vakit
