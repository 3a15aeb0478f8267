#include "vakit/identity.hpp"

#include <stdexcept>

#include "vakit/parallel.hpp"

namespace vakit {

namespace {
int g_workers = 0;
}

int worker_count() { return g_workers > 0 ? g_workers : omp_get_max_threads(); }
void set_worker_count(int n) { g_workers = n; }

std::size_t Identity::basis_count() const {
  std::size_t n = 1;
  for (const auto& s : slots) n *= s->dim();
  return n;
}

void Identity::decode(std::size_t flat, ExponentTuple& e, std::vector<Index>& b) const {
  const std::size_t ne = exponents.size();
  e = exponents[flat % ne];
  std::size_t bf = flat / ne;
  b.assign(slots.size(), 0);
  for (std::size_t k = slots.size(); k-- > 0;) {
    b[k] = bf % slots[k]->dim();
    bf /= slots[k]->dim();
  }
}

Witness make_witness(const Identity& id, const ExponentTuple& e, const std::vector<Index>& b,
                     const Sides& s) {
  Witness w;
  for (std::size_t k = 0; k < b.size(); ++k) w.basis.push_back(id.slots[k]->label(b[k]));
  for (std::size_t k = 0; k < e.size(); ++k) {
    w.exponents.emplace_back(k < id.exponent_names.size() ? id.exponent_names[k] : "e" + std::to_string(k), e[k]);
  }
  w.lhs = id.output->render(s.lhs);
  w.rhs = id.output->render(s.rhs);
  return w;
}

namespace {

template <class Finder>
AxiomResult run(const Identity& id, Finder&& finder) {
  AxiomResult r;
  r.id = id.id;
  r.anchor = id.anchor;
  r.cases = id.size();
  if (id.size() == 0) return r;
  auto fails = [&](std::size_t flat) {
    ExponentTuple e;
    std::vector<Index> b;
    id.decode(flat, e, b);
    Sides s = id.eval(e, b);
    return !(s.lhs == s.rhs);
  };
  auto bad = finder(id.size(), fails);
  if (!bad) return r;
  ExponentTuple e;
  std::vector<Index> b;
  id.decode(*bad, e, b);
  r.verdict = Verdict::Fail;
  r.witness = make_witness(id, e, b, id.eval(e, b));
  return r;
}

}  // namespace

AxiomResult verify(const Identity& id) {
  return run(id, [](std::size_t n, auto& p) { return first_failure(n, p); });
}

AxiomResult verify_serial(const Identity& id) {
  return run(id, [](std::size_t n, auto& p) { return first_failure_serial(n, p); });
}

Sides replay(const Identity& id, const Witness& w) {
  if (w.basis.size() != id.slots.size()) {
    throw std::invalid_argument("witness has " + std::to_string(w.basis.size()) + " basis labels, identity '" +
                                id.id + "' takes " + std::to_string(id.slots.size()));
  }
  std::vector<Index> b;
  for (std::size_t k = 0; k < w.basis.size(); ++k) b.push_back(id.slots[k]->index_of(w.basis[k]));
  ExponentTuple e;
  for (const auto& [name, v] : w.exponents) e.push_back(v);
  return id.eval(e, b);
}

std::vector<ExponentTuple> exponent_box(std::int64_t lo, std::int64_t hi, std::size_t k) {
  std::vector<ExponentTuple> out;
  if (lo > hi) return out;
  ExponentTuple cur(k, lo);
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    for (;;) {
      if (i == 0) return out;
      --i;
      if (cur[i] < hi) {
        ++cur[i];
        break;
      }
      cur[i] = lo;
    }
  }
}

std::vector<ExponentTuple> exponent_shell(std::int64_t lo, std::int64_t hi, std::size_t k) {
  std::vector<ExponentTuple> out;
  for (auto& t : exponent_box(lo - 1, hi + 1, k)) {
    bool inside = true;
    for (auto x : t) inside = inside && x >= lo && x <= hi;
    if (!inside) out.push_back(std::move(t));
  }
  return out;
}

std::vector<ExponentTuple> exponent_range(std::int64_t lo, std::int64_t hi) { return exponent_box(lo, hi, 1); }

}  // namespace vakit
