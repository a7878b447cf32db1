#include "catch_amalgamated.hpp"

#include "tetra/ops3d.hpp"
#include "tetra/qcomb.hpp"

using namespace tetra;

namespace {

QCoeff qp(int n) { return QCoeff::q_pow(n); }
QCoeff nq(int n) { return neg_one_pow(n) * qp(n); }  // (-q)^n
QCoeff one() { return QCoeff(1); }

}  // namespace

TEST_CASE("R examples", "[ops3d]") {
  auto R = op_R();
  CHECK(R.element({0, 0, 0}, {0, 0, 0}) == one());
  CHECK(R.element({1, 0, 0}, {1, 0, 0}) == one());
  CHECK(R.element({1, 0, 0}, {0, 0, 1}).is_zero());
  // single-term evaluations of the defining sum
  CHECK(R.element({1, 0, 1}, {0, 1, 0}) == one());
  CHECK(R.element({0, 1, 0}, {1, 0, 1}) == one() - qp(2));
}

TEST_CASE("L examples", "[ops3d]") {
  auto L = op_L();
  for (int k = 0; k <= 4; ++k) {
    CHECK(L.element({0, 1, k}, {0, 1, k}) == -qp(k + 1));
    CHECK(L.element({1, 0, k}, {1, 0, k}) == qp(k));
    CHECK(L.element({0, 0, k}, {0, 0, k}) == one());
    CHECK(L.element({1, 1, k}, {1, 1, k}) == one());
    CHECK(L.element({1, 0, k + 1}, {0, 1, k}) == one());
    if (k >= 1) CHECK(L.element({0, 1, k - 1}, {1, 0, k}) == one() - qp(2 * k));
    for (int c = 0; c <= 4; ++c)
      if (c != k) CHECK(L.element({0, 0, c}, {0, 0, k}).is_zero());
  }
}

TEST_CASE("M examples", "[ops3d]") {
  auto M = op_M();
  for (int k = 0; k <= 4; ++k) {
    CHECK(M.element({k, 1, 0}, {k, 1, 0}) == -qp(k + 1));
    if (k >= 1) CHECK(M.element({k - 1, 1, 0}, {k, 0, 1}) == one() - qp(2 * k));
  }
  CHECK(M.element({0, 0, 0}, {0, 0, 0}) == one());
}

TEST_CASE("N examples", "[ops3d]") {
  auto N = op_N();
  for (int j = 0; j <= 4; ++j) {
    CHECK(N.element({0, j, 0}, {0, j, 0}) == qp(j));
    CHECK(N.element({1, j, 1}, {1, j, 1}) == -qp(j + 1));
    CHECK(N.element({0, j, 1}, {0, j, 1}) == one());
    CHECK(N.element({1, j, 0}, {1, j, 0}) == one());
    CHECK(N.element({0, j + 1, 0}, {1, j, 1}) == qp(j) * (one() - qp(2)));
    if (j >= 1) CHECK(N.element({1, j - 1, 1}, {0, j, 0}) == bracket(j));
  }
}

TEST_CASE("Ltilde is L at -q with permuted slots", "[ops3d]") {
  auto Lt = op_Ltilde();
  for (int k = 0; k <= 4; ++k) {
    CHECK(Lt.element({k, 0, 0}, {k, 0, 0}) == one());
    CHECK(Lt.element({k, 0, 1}, {k, 0, 1}) == -nq(k + 1));
  }
  for (const auto& w : Lt.weight_classes(4))
    for (const auto& [o, i, c] : Lt.block(w)) CHECK(c.is_real());
}

TEST_CASE("J and K examples", "[ops3d]") {
  auto J = op_J();
  auto K = op_K();
  CHECK(J.element({0, 0, 0, 0}, {0, 0, 0, 0}) == one());
  CHECK(J.element({1, 0, 0, 0}, {0, 0, 0, 1}).is_zero());
  CHECK(K.element({0, 0, 0, 0}, {0, 0, 0, 0}) == one());
  auto J2 = op_J(QVariant::Q2);
  for (const auto& w : J2.weight_classes(2))
    for (const auto& [o, i, c] : J2.block(w)) {
      MultiIndex ro(o.rbegin(), o.rend()), ri(i.rbegin(), i.rend());
      CHECK(K.element(ro, ri) == c);
    }
}

TEST_CASE("X examples", "[ops3d]") {
  auto X = op_X();
  CHECK(X.element({0, 0, 0, 0}, {0, 0, 0, 0}) == one());
  for (int i = 0; i <= 4; ++i)
    for (int k = 0; k <= 4; ++k) {
      CHECK(X.element({i, 0, k, 1}, {i, 0, k, 1}) == qp(i));
      CHECK(X.element({i + 2, 0, k, 1}, {i, 1, k, 0}) == one());
      CHECK(X.element({i, 1, k, 0}, {i, 1, k, 0}) == qp(i + 1));
    }
}

TEST_CASE("Y examples", "[ops3d]") {
  auto Y = op_Y();
  CHECK(Y.element({0, 0, 0, 0}, {0, 0, 0, 0}) == one());
  for (int i = 0; i <= 4; ++i)
    for (int k = 0; k <= 4; ++k) {
      CHECK(Y.element({i + 2, 0, k, 1}, {i, 1, k, 0}) == neg_one_pow(i) * (one() + q()) / (one() - q()));
      CHECK(Y.element({i + 1, 0, k + 1, 1}, {i, 1, k, 1}) == -QCoeff::s_pow(i + k + 1) * (one() + q()));
      CHECK(Y.element({i, 1, k, 0}, {i, 1, k, 0}) == nq(i + 1));
    }
}

TEST_CASE("stored elements satisfy the weight forms", "[ops3d]") {
  for (const auto& name : {"R", "L", "M", "Ltilde", "N", "J", "K", "X", "Y"}) {
    auto op = family(name);
    for (const auto& w : op.weight_classes(2))
      for (const auto& [o, i, c] : op.block(w)) {
        CHECK(op.weight_of(o) == op.weight_of(i));
        CHECK(!c.is_zero());
      }
  }
}

TEST_CASE("variants substitute s", "[ops3d]") {
  auto L = op_L(), Li = op_L(QVariant::QInv), Ln = op_L(QVariant::NegQ);
  CHECK(Li.element({0, 1, 2}, {0, 1, 2}) == -qp(-3));
  CHECK(Ln.element({0, 1, 2}, {0, 1, 2}) == -nq(3));
  CHECK(family("L").element({0, 1, 2}, {0, 1, 2}) == L.element({0, 1, 2}, {0, 1, 2}));
  CHECK_THROWS_AS(family("W"), std::invalid_argument);
}
