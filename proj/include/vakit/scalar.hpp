/**
 * @file scalar.hpp
 * @brief Exact arithmetic in cyclotomic fields Q(zeta_N).
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vakit {

class ScalarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_scalar with the offending character offset.
class ScalarParseError : public ScalarError {
 public:
  ScalarParseError(std::size_t pos, const std::string& msg)
      : ScalarError(msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Coefficients of Phi_N, lowest degree first.
std::vector<mpz_class> cyclotomic_polynomial(int n);

/// Euler's totient.
int euler_phi(int n);

/**
 * Element of Q(zeta_N) in the power basis of Q[x]/Phi_N.
 *
 * Values whose non-constant coordinates vanish are stored as plain
 * rationals (conductor 1), so equality of field elements is equality of
 * representations.
 */
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : q_(v) {}
  Scalar(int v) : q_(v) {}
  Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  Scalar(long num, long den);

  /// zeta_N itself.
  static Scalar zeta(int n);
  /// Build from power-basis coordinates (length <= phi(N), reduced if longer).
  static Scalar from_coeffs(int n, std::vector<mpq_class> coeffs);

  int conductor() const { return n_; }
  bool is_rational() const { return n_ == 1; }
  bool is_zero() const { return n_ == 1 && q_ == 0; }
  bool is_one() const { return n_ == 1 && q_ == 1; }
  const mpq_class& rational() const;
  /// Power-basis coordinates of length phi(N) (length 1 for rationals).
  std::vector<mpq_class> coeffs() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(std::int64_t e) const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical text, e.g. "3/4" or "z^2 - 1/2".
  std::string str() const;

 private:
  void normalize();
  int n_ = 1;
  mpq_class q_;                // value when n_ == 1
  std::vector<mpq_class> c_;   // power-basis coordinates when n_ > 1
};

/// Binomial coefficient with the falling-factorial convention for any integer top.
Scalar binomial(std::int64_t top, std::int64_t k);
Scalar factorial(std::int64_t k);

/// Parse "3/4", "-2", "z^2 - 1/2", "(1+z)*z" in Q(zeta_N).
Scalar parse_scalar(std::string_view text, int conductor);

}  // namespace vakit
