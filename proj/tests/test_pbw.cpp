#include "catch_amalgamated.hpp"

#include "tetra/ops3d.hpp"
#include "tetra/pbw.hpp"
#include "tetra/zrec.hpp"

using namespace tetra;
using namespace tetra::pbw;

namespace {

QCoeff P(const char* s) { return QCoeff::parse(s); }
AlgElement e(int i) { return AlgElement::generator(i); }
AlgElement W(Word w, const QCoeff& c = 1) { return AlgElement::word(std::move(w), c); }

void check_against_op(const CartanData& cd, const SparseOp& op, int max_sum) {
  std::map<Weight, bool> seen;
  const int slots = static_cast<int>(pbw_roots(cd, 2).size());
  for (const auto& a : all_tuples(std::vector<SlotKind>(slots, SlotKind::Boson), max_sum)) {
    int sum = 0;
    for (int x : a) sum += x;
    if (sum > max_sum) continue;
    bool iso_ok = true;
    for (int t = 0; t < slots; ++t)
      if (pbw_roots(cd, 2)[t].cls == RootClass::Iso && a[t] > 1) iso_ok = false;
    if (!iso_ok) continue;
    Weight w = exponents_weight(cd, 2, a);
    if (seen.count(w)) continue;
    seen[w] = true;
    auto block = transition_matrix(cd, w);
    for (const auto& A : block.from)
      for (const auto& B : block.to) {
        INFO(cd.id << " out " << index_str(A) << " in " << index_str(B));
        CHECK(block.at(A, B) == op.element(A, B));
      }
  }
}

}  // namespace

TEST_CASE("Cartan data tables", "[pbw]") {
  auto a = diagram("A:ox");
  CHECK(a.DA == std::vector<std::vector<int>>{{2, -1}, {-1, 0}});
  CHECK(a.parity == std::vector<int>{0, 1});
  CHECK(diagram("A:○⊗").id == "A:ox");
  CHECK(diagram("A(IV)").id == "A:xx");
  CHECK(diagram("B:⊗●").id == "B:xb");
  CHECK(diagram("B3(VI)").id == "B:oxo");
  auto b = diagram("B:xo");
  CHECK(b.root_class({1, 0}) == RootClass::Iso);
  CHECK(b.root_class({1, 1}) == RootClass::Aniso);
  CHECK(b.root_class({1, 2}) == RootClass::Iso);
  CHECK(b.root_class({0, 1}) == RootClass::Even);
  CHECK_THROWS_AS(diagram("C:oo"), std::invalid_argument);
  CHECK(diagram_ids('B', 3).size() == 8);
  CHECK(diagram_ids('A', 3).size() == 6);
}

TEST_CASE("q-commutator and root vectors", "[pbw]") {
  auto cd = diagram("A:oo");
  // [e2,e1]_q = e2e1 - q^{-(a2,a1)} e1e2 with (a2,a1) = -1
  CHECK(root_vector(cd, "21").element == W({2, 1}) - W({1, 2}, q()));
  CHECK(qcomm(cd, e(1), e(2)) == W({1, 2}) - W({2, 1}, q()));

  auto bd = diagram("B:oo");
  auto r = root_vector(bd, "(12)2");
  CHECK(r.normalized);
  CHECK(r.weight == Weight{1, 2});
  QCoeff norm = QCoeff(1) / (s() + QCoeff::s_pow(-1));
  CHECK(r.element == norm * qcomm(bd, qcomm(bd, e(1), e(2)), e(2)));
  CHECK_FALSE(root_vector(bd, "12").normalized);
  CHECK(root_vector(bd, "2(21)").normalized);
  // left association of juxtaposed atoms
  auto a3 = diagram("A:ooo");
  CHECK(root_vector(a3, "321").element == root_vector(a3, "(32)1").element);
}

TEST_CASE("PBW root lists follow the two orders", "[pbw]") {
  auto cd = diagram("B:ob");
  const auto& b1 = pbw_roots(cd, 1);
  const auto& b2 = pbw_roots(cd, 2);
  REQUIRE(b1.size() == 4);
  CHECK(b1[0].tree == "1");
  CHECK(b1[2].tree == "2(21)");
  CHECK(b2[1].tree == "(12)2");
  CHECK(b1[1].cls == RootClass::Aniso);
  CHECK(b1[2].cls == RootClass::Even);
  CHECK(b1[3].bracket_exponent() == 1);
  CHECK(b1[0].bracket_exponent() == 2);
}

TEST_CASE("monomials and their constraints", "[pbw]") {
  auto cd = diagram("A:ox");
  CHECK(pbw_monomial(cd, 1, {0, 0, 0}) == AlgElement(QCoeff(1)));
  CHECK_THROWS_AS(pbw_monomial(cd, 1, {0, 0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(pbw_monomial(cd, 1, {0, 0}), std::invalid_argument);
  auto oo = diagram("A:oo");
  // e_1^(2) = e_1^2 / [2]_q
  CHECK(pbw_monomial(oo, 1, {2, 0, 0}) == W({1, 1}, QCoeff(1) / (q() + q().pow(-1))));
}

TEST_CASE("defining relations vanish in the shuffle image", "[pbw]") {
  for (const auto& id : diagram_ids('A', 2)) {
    auto cd = diagram(id);
    for (int i = 1; i <= 2; ++i) {
      int j = 3 - i;
      if (cd.parity[i - 1] == 1) {
        CHECK(vanishes(cd, e(i) * e(i)));
        CHECK_FALSE(vanishes(cd, e(j) * e(i)));
      } else {
        CHECK(vanishes(cd, qcomm(cd, qcomm(cd, e(j), e(i)), e(i))));
      }
    }
  }
  for (const auto& id : diagram_ids('B', 2)) {
    auto cd = diagram(id);
    // rank 2 type B: |a_21| = 2 so the triple bracket vanishes for alpha_2
    CHECK(vanishes(cd, qcomm(cd, qcomm(cd, qcomm(cd, e(1), e(2)), e(2)), e(2))));
    CHECK_FALSE(vanishes(cd, qcomm(cd, qcomm(cd, e(1), e(2)), e(2))));
    if (cd.parity[0] == 0)
      CHECK(vanishes(cd, qcomm(cd, qcomm(cd, e(2), e(1)), e(1))));
    else
      CHECK(vanishes(cd, e(1) * e(1)));
  }
  // quartic relation for an anisotropic alpha_2 next to an isotropic alpha_1
  auto xb = diagram("B:xb");
  QCoeff c = QCoeff(1) - q() - q().pow(-1);
  AlgElement quartic = W({2, 2, 2, 1}) - c * W({2, 2, 1, 2}) + c * W({2, 1, 2, 2}) - W({1, 2, 2, 2});
  CHECK(vanishes(xb, quartic));
  // additional relation around an isotropic middle node
  for (const char* id : {"A:oxo", "A:oxx", "A:xxx", "B:oxo", "B:oxb", "B:xxo"}) {
    auto cd = diagram(id);
    auto rel = qcomm(cd, qcomm(cd, qcomm(cd, e(1), e(2)), e(3)), e(2));
    INFO(id);
    CHECK(vanishes(cd, rel));
  }
}

TEST_CASE("normal forms", "[pbw]") {
  auto cd = diagram("A:oo");
  auto rs = RewriteSystem::compile(cd, 4);
  CHECK(normal_form(W({2, 1, 1}), rs) == (q() + q().pow(-1)) * W({1, 2, 1}) - W({1, 1, 2}));
  CHECK(shuffle_normal_form(cd, W({2, 1, 1})) == (q() + q().pow(-1)) * W({1, 2, 1}) - W({1, 1, 2}));
  CHECK(normal_form(e(1), rs) == e(1));
  auto ox = diagram("A:ox");
  auto rso = RewriteSystem::compile(ox, 4);
  CHECK(normal_form(W({2, 2, 1}), rso).is_zero());
  CHECK(normal_form(W({1, 2, 2, 1}), rso).is_zero());
  auto nf = normal_form(W({2, 1, 1}), rs);
  CHECK(normal_form(nf, rs) == nf);
  CHECK_THROWS_AS(normal_form(W({1, 1, 1, 1, 2}), rs), std::out_of_range);
}

TEST_CASE("rewrite systems are confluent", "[pbw]") {
  for (char t : {'A', 'B'})
    for (const auto& id : diagram_ids(t, 2)) {
      auto rs = RewriteSystem::compile(diagram(id), 6);
      INFO(id);
      CHECK(!rs.rules().empty());
      CHECK(rs.confluent());
    }
  for (const char* id : {"A:oxo", "B:oxb", "B:xxb"}) {
    auto rs = RewriteSystem::compile(diagram(id), 4);
    INFO(id);
    CHECK(rs.confluent());
  }
}

TEST_CASE("PBW monomials are a basis of each weight space", "[pbw]") {
  for (char t : {'A', 'B'})
    for (const auto& id : diagram_ids(t, 2)) {
      auto cd = diagram(id);
      for (int x = 0; x <= 3; ++x)
        for (int y = 0; y <= 4; ++y) {
          Weight w{x, y};
          auto n = normal_words(cd, w).size();
          INFO(id << " " << x << "," << y);
          CHECK(pbw_exponents(cd, 1, w).size() == n);
          CHECK(pbw_exponents(cd, 2, w).size() == n);
        }
    }
}

TEST_CASE("chi maps E_1 to reversed E_2", "[pbw]") {
  for (const char* id : {"A:xo", "B:oo", "B:xb"}) {
    auto cd = diagram(id);
    for (const auto& a : pbw_exponents(cd, 1, {2, 2})) {
      MultiIndex rev(a.rbegin(), a.rend());
      CHECK(chi(pbw_monomial(cd, 1, a)) == pbw_monomial(cd, 2, rev));
    }
  }
}

TEST_CASE("transition matrix examples", "[pbw]") {
  auto ox = diagram("A:ox");
  auto blk = transition_matrix(ox, exponents_weight(ox, 2, {1, 1, 0}));
  CHECK(blk.at({1, 1, 0}, {1, 1, 0}) == QCoeff(1));
  CHECK(operator_for(ox) == "L");
  CHECK(operator_for(diagram("B:ob")) == "Z");
  CHECK_THROWS_AS(operator_for(diagram("A:ooo")), std::invalid_argument);
}

TEST_CASE("gamma-tilde from the reversal relation", "[pbw]") {
  for (const char* id : {"A:oo", "A:xx", "B:xo", "B:ob"}) {
    auto cd = diagram(id);
    for (const Weight& w : {Weight{1, 1}, Weight{2, 2}, Weight{1, 3}}) {
      auto g = transition(cd, 2, 1, w);
      auto direct = transition(cd, 1, 2, w);
      auto via = gamma_tilde_from(g);
      INFO(id << " " << w[0] << "," << w[1]);
      for (const auto& A : direct.from)
        for (const auto& B : direct.to) CHECK(direct.at(A, B) == via.at(A, B));
    }
  }
}

TEST_CASE("rank-2 transition matrices equal the 3D operators", "[pbw]") {
  check_against_op(diagram("A:oo"), op_R(), 3);
  check_against_op(diagram("A:ox"), op_L(), 3);
  check_against_op(diagram("A:xo"), op_M(), 3);
  check_against_op(diagram("A:xx"), op_N(), 3);
  check_against_op(diagram("B:oo"), op_J(), 2);
  check_against_op(diagram("B:xo"), op_X(), 2);
  check_against_op(diagram("B:xb"), op_Y(), 2);
  check_against_op(diagram("B:ob"), op_Z(), 2);
}

TEST_CASE("rank-3 higher-order relations hold", "[pbw]") {
  for (char t : {'A', 'B'})
    for (const auto& id : diagram_ids(t, 3)) {
      auto cd = diagram(id);
      auto rels = higher_order_relations(cd);
      CHECK(rels.size() >= 6);
      for (const auto& r : rels) {
        INFO(id << ": " << r.name);
        CHECK(vanishes(cd, r.element));
      }
    }
}

TEST_CASE("relation conditions select per diagram", "[pbw]") {
  auto names = [](const char* id) {
    std::vector<std::string> n;
    for (const auto& r : higher_order_relations(diagram(id))) n.push_back(r.name);
    return n;
  };
  auto has = [](const std::vector<std::string>& v, const char* s) {
    return std::find(v.begin(), v.end(), s) != v.end();
  };
  auto ooo = names("A:ooo");
  CHECK(has(ooo, "serre e_1^2 e_23"));
  CHECK_FALSE(has(ooo, "e_12^2 = 0"));
  auto oxo = names("A:oxo");
  CHECK(has(oxo, "e_12^2 = 0"));
  CHECK(has(oxo, "chi of e_23^2 = 0"));
  auto oob = names("B:oob");
  CHECK(has(oob, "quartic e_3^3 e_21"));
  CHECK_FALSE(has(oob, "cubic serre e_3^3 e_21"));
  // a non-relation must not vanish: the sign in the first equality matters
  auto xox = diagram("A:xox");
  auto wrong = root_vector(xox, "(21)3").element - root_vector(xox, "(23)1").element;
  CHECK_FALSE(vanishes(xox, wrong));
  CHECK_THROWS_AS(higher_order_relations(diagram("A:oo")), std::invalid_argument);
}
