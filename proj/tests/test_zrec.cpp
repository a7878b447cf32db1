#include "catch_amalgamated.hpp"

#include "tetra/ops3d.hpp"
#include "tetra/zrec.hpp"

using namespace tetra;

namespace {

QCoeff P(const char* s) { return QCoeff::parse(s); }

}  // namespace

TEST_CASE("Z elements in the (0,1,1,2) column", "[zrec]") {
  CHECK(z_gamma({0, 1, 1, 2, 0, 0, 3, 1}) == P("q^4*(1+q)^2*(1+q^2)"));
  CHECK(z_gamma({0, 1, 1, 2, 0, 1, 1, 2}) == P("-q^2*(1-q^4-q^7)"));
  CHECK(z_gamma({0, 1, 1, 2, 1, 0, 2, 2}) == P("-q^3*(1+q)*(1+q+q^2+q^3+q^5)"));
  CHECK(z_gamma({0, 1, 1, 2, 1, 1, 0, 3}) == P("1-q^4-q^7"));
  CHECK(z_gamma({0, 1, 1, 2, 2, 0, 1, 3}) == P("-q^5*(1+q^3)/(1-q)"));
  CHECK(z_gamma({0, 1, 1, 2, 3, 0, 0, 4}) == P("q^2*(1+q)/(1-q)"));
}

TEST_CASE("the (0,1,1,2) column has exactly six nonzero entries", "[zrec]") {
  auto Z = op_Z();
  CHECK(Z.column({0, 1, 1, 2}).size() == 6);
}

TEST_CASE("Z elements in the (2,0,1,0) column", "[zrec]") {
  CHECK(z_gamma({2, 0, 1, 0, 2, 0, 1, 0}) == P("-(1-q^2+q^3)"));
  CHECK(z_gamma({2, 0, 1, 0, 1, 1, 0, 0}) == P("q*(1-q)^2"));
  CHECK(z_gamma({2, 0, 1, 0, 3, 0, 0, 1}) == P("q"));
  CHECK(op_Z().column({2, 0, 1, 0}).size() == 3);
}

TEST_CASE("z_raw base cases", "[zrec]") {
  for (int i = 0; i <= 4; ++i) CHECK(z_raw({i, 0, 0, 0, i, 0, 0, 0}) == QCoeff(1));
  CHECK(z_raw({1, 0, 0, 0, 0, 0, 0, 1}).is_zero());
  CHECK(z_raw({0, 1, 0, 0, 0, 0, 0, 0}).is_zero());
}

TEST_CASE("z_gamma obeys both weight forms", "[zrec]") {
  auto Z = op_Z();
  for (const auto& w : Z.weight_classes(2))
    for (const auto& in : Z.weight_class(w))
      for (const auto& out : all_tuples(Z.signature(), 4)) {
        if (Z.weight_of(out) == w) continue;
        CHECK(z_gamma({in[0], in[1], in[2], in[3], out[0], out[1], out[2], out[3]}).is_zero());
      }
}

TEST_CASE("raw X coefficients", "[zrec]") {
  CHECK(x_raw({0, 0, 0, 0, 0, 0, 0, 0}) == QCoeff(1));
  CHECK(x_raw({0, 0, 1, 0, 0, 1, 0, 1}) == P("-s*(1+q)"));
  CHECK(x_raw({0, 1, 0, 1, 0, 1, 0, 1}) == P("1-q-q^2"));
  for (int b = 0; b <= 4; ++b) CHECK(x_raw({0, b, 0, 0, 0, b, 0, 0}) == P("-q").pow(b));
}

TEST_CASE("x_oracle agrees with op_X on small blocks", "[zrec]") {
  auto X = op_X();
  for (const auto& w : X.weight_classes(2))
    for (const auto& i : X.weight_class(w))
      for (const auto& o : X.weight_class(w))
        CHECK(x_oracle({i[0], i[1], i[2], i[3], o[0], o[1], o[2], o[3]}) == X.element(o, i));
}
