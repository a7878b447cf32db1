#include "catch_amalgamated.hpp"

#include "tetra/qcoeff.hpp"

#include <random>

using namespace tetra;

namespace {

QCoeff random_coeff(std::mt19937& rng, bool allow_den = true) {
  std::uniform_int_distribution<int> c(-3, 3), e(-4, 4), n(1, 3);
  auto poly = [&]() {
    HalfLaurent p;
    for (int t = 0, m = n(rng); t < m; ++t) p += HalfLaurent::monomial(GaussInt(c(rng), c(rng) / 2), e(rng));
    return p;
  };
  HalfLaurent num = poly();
  if (!allow_den) return QCoeff(num);
  HalfLaurent den = poly();
  while (den.is_zero()) den = poly();
  return QCoeff(num, den);
}

}  // namespace

TEST_CASE("integer fast path promotes on overflow", "[qcoeff]") {
  Int big = Int(INT64_MAX) + Int(1);
  CHECK_FALSE(big.is_small());
  CHECK((big - Int(1)).is_small());
  CHECK((big * big).str() == "85070591730234615865843651857942052864");
  CHECK(Int::divexact(big * big, big) == big);
  CHECK(Int::gcd(Int(12), Int(-18)) == Int(6));
}

TEST_CASE("gaussian integers", "[qcoeff]") {
  GaussInt a(2, 1), b(1, -1);
  CHECK(a * b == GaussInt(3, -1));
  CHECK(GaussInt::divexact(a * b, b).value() == a);
  CHECK_FALSE(GaussInt::divexact(GaussInt(1), GaussInt(2)).has_value());
  auto g = GaussInt::gcd(GaussInt(4, 2), GaussInt(6, 3));
  CHECK(g.norm() == Int(5));
}

TEST_CASE("arith examples", "[qcoeff]") {
  CHECK((QCoeff(1) - q()) + q() == QCoeff(1));
  CHECK(s() * s() == q());
  QCoeff lhs = (QCoeff(1) - q().pow(2)) / (QCoeff(1) - q());
  CHECK(lhs == QCoeff(1) + q());
  CHECK(lhs.str() == "1+s^2");
  CHECK_THROWS_AS(QCoeff(1) / QCoeff(0), ArithmeticError);
}

TEST_CASE("subst_s_unit examples", "[qcoeff]") {
  CHECK(q().subst_unit(1) == -q());
  CHECK(s().subst_unit(1) == QCoeff::i_unit() * s());
  CHECK((QCoeff(1) + q()).subst_unit(2) == QCoeff(1) + q());
}

TEST_CASE("crystal_limit examples", "[qcoeff]") {
  for (int b = 1; b <= 3; ++b)
    for (int d = 1; d <= 3; ++d) {
      QCoeff x = QCoeff(1) - (QCoeff(1) - (-q()).pow(b)) * q().pow(d);
      CHECK(x.crystal_limit().as_integer() == 1);
    }
  CHECK(((q()).pow(2) * (QCoeff(1) - q().pow(2))).crystal_limit().as_integer() == 0);
  CHECK(((QCoeff(1) + q()) / (QCoeff(1) - q())).crystal_limit().as_integer() == 1);
  CHECK((QCoeff(1) / q()).crystal_limit().divergent);
}

TEST_CASE("eval_numeric examples", "[qcoeff]") {
  CHECK(std::abs(q().eval(0.5) - 0.25) < 1e-12);
  CHECK(std::abs((QCoeff(1) / (QCoeff(1) - q())).eval(0.5) - 4.0 / 3.0) < 1e-12);
  CHECK(std::abs(s().eval(0.5) - 0.5) < 1e-12);
  CHECK_THROWS_AS((QCoeff(1) / (QCoeff(1) - q())).eval(1.0), ArithmeticError);
}

TEST_CASE("canonical strings", "[qcoeff]") {
  CHECK(QCoeff(0).str() == "0");
  CHECK(QCoeff(1).str() == "1");
  CHECK((QCoeff(3) * QCoeff::s_pow(-2)).str() == "3*s^-2");
  CHECK((QCoeff(HalfLaurent(GaussInt(1, 2), 5))).str() == "(1+2i)*s^5");
  CHECK((QCoeff::i_unit() * s()).str() == "i*s");
  CHECK((-q()).str() == "-s^2");
  // den is normalized to valuation 0 with positive lowest coefficient
  QCoeff x = QCoeff(1) / (s() - q() * s());
  CHECK(x.str() == "(s^-1)/(1-s^2)");
  CHECK((QCoeff(2) / (QCoeff(4) - QCoeff(4) * q())).str() == "(1)/(2-2*s^2)");
  CHECK((QCoeff(1) / (-QCoeff(1) + q())).str() == "(-1)/(1-s^2)");
}

TEST_CASE("parse round trip", "[qcoeff]") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    QCoeff x = random_coeff(rng);
    QCoeff y = QCoeff::parse(x.str());
    CHECK(x == y);
    CHECK(y.str() == x.str());
  }
  CHECK(QCoeff::parse("(1+2i)*s^5-3*s^-2") == QCoeff(HalfLaurent(GaussInt(1, 2), 5)) - QCoeff(3) * QCoeff::s_pow(-2));
  CHECK_THROWS_AS(QCoeff::parse("1+*s"), std::invalid_argument);
}

TEST_CASE("field axioms on random triples", "[qcoeff]") {
  std::mt19937 rng(11);
  for (int t = 0; t < 60; ++t) {
    QCoeff a = random_coeff(rng), b = random_coeff(rng), c = random_coeff(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * (QCoeff(1) / a) == QCoeff(1));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("subst is a ring homomorphism", "[qcoeff]") {
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    QCoeff a = random_coeff(rng), b = random_coeff(rng);
    CHECK((a * b).subst_unit(1) == a.subst_unit(1) * b.subst_unit(1));
    CHECK((a + b).subst_unit(1) == a.subst_unit(1) + b.subst_unit(1));
    CHECK(a.subst_unit(1).subst_unit(1) == a.subst_unit(2));
  }
}

TEST_CASE("crystal limit is multiplicative and matches numerics", "[qcoeff]") {
  std::mt19937 rng(3);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 40; ++t) {
    QCoeff a = random_coeff(rng), b = random_coeff(rng);
    auto la = a.crystal_limit(), lb = b.crystal_limit();
    if (la.divergent || lb.divergent) continue;
    auto lab = (a * b).crystal_limit();
    REQUIRE_FALSE(lab.divergent);
    CHECK(lab.value == GaussRational{la.value.num * lb.value.num, la.value.den * lb.value.den});
    std::complex<double> l = la.value.num.to_complex() / la.value.den.to_complex();
    double e2 = std::abs(a.eval(1e-2) - l), e3 = std::abs(a.eval(1e-3) - l);
    CHECK(e3 <= e2 + 1e-9);
    ++checked;
  }
  CHECK(checked > 10);
}
