#include "vakit/scalar.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace vakit {

namespace {

using Poly = std::vector<mpq_class>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

// Long division; returns quotient, leaves remainder in a.
Poly poly_divmod(Poly& a, const Poly& b) {
  trim(a);
  Poly q;
  if (a.size() < b.size()) return q;
  q.assign(a.size() - b.size() + 1, 0);
  const mpq_class lead = b.back();
  for (std::size_t k = a.size(); k-- >= b.size();) {
    if (a[k] == 0) continue;
    mpq_class c = a[k] / lead;
    std::size_t shift = k - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
  }
  trim(a);
  trim(q);
  return q;
}

const Poly& modulus(int n) {
  thread_local std::map<int, Poly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Poly p;
  for (const auto& c : cyclotomic_polynomial(n)) p.emplace_back(c);
  return cache.emplace(n, std::move(p)).first->second;
}

Poly reduce(Poly a, int n) {
  const Poly& m = modulus(n);
  poly_divmod(a, m);
  return a;
}

}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(int n) {
  if (n < 1) throw ScalarError("cyclotomic_polynomial: N must be positive");
  thread_local std::map<int, std::vector<mpz_class>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Poly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    Poly den;
    for (const auto& c : cyclotomic_polynomial(d)) den.emplace_back(c);
    Poly q = poly_divmod(num, den);
    if (!num.empty()) throw ScalarError("cyclotomic_polynomial: inexact division");
    num = q;
  }
  std::vector<mpz_class> out;
  for (auto& c : num) {
    if (c.get_den() != 1) throw ScalarError("cyclotomic_polynomial: non-integral coefficient");
    out.push_back(c.get_num());
  }
  cache.emplace(n, out);
  return out;
}

int euler_phi(int n) {
  int result = n;
  int m = n;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

Scalar::Scalar(long num, long den) : q_(num, den) {
  if (den == 0) throw ScalarError("division by zero");
  q_.canonicalize();
}

Scalar Scalar::zeta(int n) {
  if (n < 1) throw ScalarError("zeta: N must be positive");
  Poly p{0, 1};
  return from_coeffs(n, p);
}

Scalar Scalar::from_coeffs(int n, std::vector<mpq_class> coeffs) {
  if (n < 1) throw ScalarError("conductor must be positive");
  for (auto& c : coeffs) c.canonicalize();
  Scalar s;
  if (euler_phi(n) == 1) {
    Poly r = reduce(std::move(coeffs), n);
    s.q_ = r.empty() ? mpq_class(0) : r[0];
    return s;
  }
  s.n_ = n;
  s.c_ = reduce(std::move(coeffs), n);
  s.normalize();
  return s;
}

void Scalar::normalize() {
  if (n_ == 1) return;
  trim(c_);
  if (c_.size() <= 1) {
    q_ = c_.empty() ? mpq_class(0) : c_[0];
    c_.clear();
    n_ = 1;
  }
}

const mpq_class& Scalar::rational() const {
  if (n_ != 1) throw ScalarError("scalar is not rational: " + str());
  return q_;
}

std::vector<mpq_class> Scalar::coeffs() const {
  if (n_ == 1) return {q_};
  std::vector<mpq_class> out(c_);
  out.resize(euler_phi(n_), 0);
  return out;
}

namespace {

int common_conductor(const Scalar& a, const Scalar& b) {
  if (a.is_rational()) return b.conductor();
  if (b.is_rational()) return a.conductor();
  if (a.conductor() != b.conductor()) {
    throw ScalarError("conductor mismatch: Q(zeta_" + std::to_string(a.conductor()) +
                      ") vs Q(zeta_" + std::to_string(b.conductor()) + ")");
  }
  return a.conductor();
}

Poly as_poly(const Scalar& s) {
  Poly p = s.is_rational() ? Poly{s.rational()} : s.coeffs();
  trim(p);
  return p;
}

}  // namespace

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.q_ = -r.q_;
  for (auto& c : r.c_) c = -c;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (n_ == 1 && o.n_ == 1) {
    q_ += o.q_;
    return *this;
  }
  int n = common_conductor(*this, o);
  Poly a = as_poly(*this);
  Poly b = as_poly(o);
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  *this = from_coeffs(n, std::move(a));
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (n_ == 1 && o.n_ == 1) {
    q_ *= o.q_;
    return *this;
  }
  int n = common_conductor(*this, o);
  *this = from_coeffs(n, poly_mul(as_poly(*this), as_poly(o)));
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw ScalarError("division by zero");
  if (n_ == 1) return Scalar(mpq_class(1) / q_);
  // Extended Euclid: track s with s*a = r (mod Phi_N).
  Poly r0 = modulus(n_);
  Poly r1 = as_poly(*this);
  Poly s0;
  Poly s1{1};
  while (r1.size() > 1) {
    Poly rem = r0;
    Poly q = poly_divmod(rem, r1);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw ScalarError("inverse: element is not invertible");
  mpq_class c = r1[0];
  for (auto& x : s1) x /= c;
  return from_coeffs(n_, s1);
}

Scalar Scalar::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar result(1);
  Scalar base(*this);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.n_ != b.n_) return false;
  if (a.n_ == 1) return a.q_ == b.q_;
  return a.c_ == b.c_;
}

std::string Scalar::str() const {
  if (n_ == 1) return q_.get_str();
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const mpq_class& c = c_[k];
    if (c == 0) continue;
    bool neg = c < 0;
    mpq_class mag = neg ? mpq_class(-c) : c;
    if (first) {
      if (neg) out << "-";
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "z";
    if (k > 1) out << "^" << k;
  }
  return out.str();
}

Scalar factorial(std::int64_t k) {
  mpz_class f = 1;
  for (std::int64_t j = 2; j <= k; ++j) f *= j;
  return Scalar(mpq_class(f));
}

Scalar binomial(std::int64_t top, std::int64_t k) {
  if (k < 0) return Scalar(0);
  mpz_class num = 1;
  mpz_class den = 1;
  for (std::int64_t j = 0; j < k; ++j) {
    num *= mpz_class(static_cast<long>(top - j));
    den *= mpz_class(static_cast<long>(j + 1));
  }
  return Scalar(mpq_class(num, den));
}

namespace {

class ScalarParser {
 public:
  ScalarParser(std::string_view text, int n) : s_(text), n_(n) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ScalarParseError(pos_, "scalar parse error at offset " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar v;
    skip();
    if (eat('-')) {
      v = -term();
    } else {
      eat('+');
      v = term();
    }
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }
  Scalar term() {
    Scalar v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        Scalar d = factor();
        if (d.is_zero()) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }
  Scalar factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    Scalar base;
    if (c == '(') {
      ++pos_;
      base = expr();
      if (!eat(')')) fail("expected ')'");
    } else if (c == '-') {
      ++pos_;
      return -factor();
    } else if (c == 'z') {
      ++pos_;
      if (n_ == 1) fail("'z' used but the scalar field is Q (conductor 1)");
      base = Scalar::zeta(n_);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      base = Scalar(mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    } else {
      fail("unexpected '" + std::string(1, c) + "'");
    }
    if (eat('^')) {
      bool neg = eat('-');
      std::int64_t e = integer();
      if (base.is_zero() && neg) fail("zero to a negative power");
      base = base.pow(neg ? -e : e);
    }
    return base;
  }

  std::string_view s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text, int conductor) {
  if (conductor < 1) throw ScalarError("conductor must be positive");
  return ScalarParser(text, conductor).parse();
}

}  // namespace vakit
