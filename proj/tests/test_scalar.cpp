#include <gtest/gtest.h>

#include <complex>
#include <numeric>
#include <random>

#include "vakit/scalar.hpp"

using namespace vakit;

namespace {

Scalar z(int n) { return Scalar::zeta(n); }

// Phi_N evaluated at every primitive N-th root of unity, in floating point.
double max_residual_at_primitive_roots(const std::vector<mpz_class>& phi, int n) {
  double worst = 0;
  for (int k = 1; k <= n; ++k) {
    if (std::gcd(k, n) != 1) continue;
    std::complex<double> x = std::polar(1.0, 2 * M_PI * k / n);
    std::complex<double> acc = 0;
    for (std::size_t i = phi.size(); i-- > 0;) acc = acc * x + phi[i].get_d();
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

Scalar random_scalar(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<mpq_class> c(static_cast<std::size_t>(euler_phi(n)));
  for (auto& x : c) x = mpq_class(num(rng), den(rng));
  return Scalar::from_coeffs(n, c);
}

}  // namespace

TEST(Scalar, RationalArithmetic) {
  EXPECT_EQ(Scalar(1, 2) + Scalar(1, 3), Scalar(5, 6));
  EXPECT_EQ(Scalar(2).inverse(), Scalar(1, 2));
  EXPECT_EQ(Scalar(-6, 4).str(), "-3/2");
  EXPECT_TRUE((Scalar(3) - Scalar(3)).is_zero());
}

TEST(Scalar, RootsOfUnity) {
  EXPECT_EQ(z(4) * z(4), Scalar(-1));
  EXPECT_EQ(z(3) + z(3) * z(3), Scalar(-1));
  EXPECT_EQ((Scalar(1) + z(3)).inverse(), -z(3));
  for (int n : {3, 5, 8, 12}) EXPECT_EQ(z(n).inverse(), z(n).pow(n - 1)) << n;
  EXPECT_EQ(z(6).pow(6), Scalar(1));
  EXPECT_EQ(z(6).pow(-1), z(6).pow(5));
}

TEST(Scalar, CyclotomicPolynomials) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<mpz_class>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<mpz_class>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<mpz_class>{1, 0, -1, 0, 1}));
  for (int n = 1; n <= 30; ++n) {
    auto phi = cyclotomic_polynomial(n);
    EXPECT_EQ(static_cast<int>(phi.size()) - 1, euler_phi(n)) << n;
    EXPECT_LT(max_residual_at_primitive_roots(phi, n), 1e-8) << n;
  }
}

TEST(Scalar, FieldAxiomsOnRandomSamples) {
  std::mt19937_64 rng(20240611);
  for (int n = 1; n <= 24; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      Scalar a = random_scalar(rng, n), b = random_scalar(rng, n), c = random_scalar(rng, n);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Scalar(1)) << "n=" << n << " a=" << a.str();
    }
  }
}

TEST(Scalar, RationalEmbeddingIsRingMap) {
  Scalar a(3, 7), b(-2, 5);
  auto embed = [](const Scalar& q) {
    std::vector<mpq_class> c(static_cast<std::size_t>(euler_phi(9)));
    c[0] = q.rational();
    return Scalar::from_coeffs(9, c);
  };
  EXPECT_EQ(embed(a) * embed(b), embed(a * b));
  EXPECT_EQ(embed(a) + embed(b), embed(a + b));
  EXPECT_TRUE(embed(a).is_rational());
}

TEST(Scalar, CanonicalForm) {
  Scalar a = z(5) + z(5).pow(2) + z(5).pow(3) + z(5).pow(4);
  EXPECT_TRUE(a.is_rational());
  EXPECT_EQ(a, Scalar(-1));
  EXPECT_EQ(a.str(), "-1");
}

TEST(Scalar, DivisionByZero) { EXPECT_THROW(Scalar(0).inverse(), ScalarError); }

TEST(Scalar, ConductorMismatch) { EXPECT_THROW(z(3) * z(4), ScalarError); }

TEST(Scalar, Parse) {
  EXPECT_EQ(parse_scalar("3/4", 1), Scalar(3, 4));
  EXPECT_EQ(parse_scalar("-2", 1), Scalar(-2));
  EXPECT_EQ(parse_scalar("z^2 - 1/2", 8), z(8).pow(2) - Scalar(1, 2));
  EXPECT_EQ(parse_scalar("(1+z)*z", 3), z(3) + z(3) * z(3));
  EXPECT_EQ(parse_scalar("z^4", 4), Scalar(1));
  for (int n : {3, 7, 12}) {
    Scalar s = z(n) * Scalar(2, 3) - z(n).pow(2);
    EXPECT_EQ(parse_scalar(s.str(), n), s);
  }
}

TEST(Scalar, ParseErrorsCarryOffsets) {
  try {
    parse_scalar("1 + q", 3);
    FAIL();
  } catch (const ScalarParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_scalar("z", 1), ScalarError);
  EXPECT_THROW(parse_scalar("1/0", 1), ScalarError);
  EXPECT_THROW(parse_scalar("(1", 1), ScalarParseError);
}

TEST(Scalar, Binomials) {
  EXPECT_EQ(binomial(5, 2), Scalar(10));
  EXPECT_EQ(binomial(-1, 3), Scalar(-1));
  EXPECT_EQ(binomial(-2, 2), Scalar(3));
  EXPECT_EQ(binomial(3, 5), Scalar(0));
  EXPECT_EQ(binomial(4, -1), Scalar(0));
  EXPECT_EQ(factorial(6), Scalar(720));
}
