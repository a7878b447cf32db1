#include "catch_amalgamated.hpp"

#include "tetra/ops3d.hpp"
#include "tetra/tensor.hpp"

using namespace tetra;

namespace {

constexpr SlotKind kB = SlotKind::Boson, kF = SlotKind::Fermion;

OpResolver registry() {
  return [](const std::string& n, QVariant v) { return family(n, v); };
}

// R123 R145 R246 R356 = R356 R246 R145 R123 in component form.
EquationSpec kv94() {
  EquationSpec e;
  e.name = "KV94";
  e.slots.assign(6, kB);
  e.lhs.factors = {{"R", QVariant::Q, {"x1", "x2", "x3"}, {"o1", "o2", "o3"}},
                   {"R", QVariant::Q, {"i1", "x4", "x5"}, {"x1", "o4", "o5"}},
                   {"R", QVariant::Q, {"i2", "i4", "x6"}, {"x2", "x4", "o6"}},
                   {"R", QVariant::Q, {"i3", "i5", "i6"}, {"x3", "x5", "x6"}}};
  e.rhs.factors = {{"R", QVariant::Q, {"x3", "x5", "x6"}, {"o3", "o5", "o6"}},
                   {"R", QVariant::Q, {"x2", "x4", "i6"}, {"o2", "o4", "x6"}},
                   {"R", QVariant::Q, {"x1", "i4", "i5"}, {"o1", "x4", "x5"}},
                   {"R", QVariant::Q, {"i1", "i2", "i3"}, {"x1", "x2", "x3"}}};
  return e;
}

}  // namespace

TEST_CASE("element lookup", "[tensor]") {
  auto id = SparseOp::identity({kB, kF});
  CHECK(id.element({2, 1}, {2, 1}) == QCoeff(1));
  CHECK(id.element({2, 0}, {2, 1}).is_zero());
  CHECK_THROWS_AS(id.element({2, 2}, {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(id.element({2}, {2, 1}), std::invalid_argument);
  auto op = SparseOp::from_elements("T", {kB, kB}, {{{1, 1}}}, {{{1, 0}, {0, 1}, QCoeff(3)}});
  CHECK(op.element({0, 1}, {1, 0}).is_zero());
  CHECK(op.element({1, 0}, {0, 1}) == QCoeff(3));
  CHECK(op.element({2, 0}, {0, 1}).is_zero());
}

TEST_CASE("weight classes", "[tensor]") {
  auto cls = enumerate_weight_class({kB, kB, kB}, {{{1, 1, 0}}, {{0, 1, 1}}}, {2, 1});
  // (a,b,c) with a+b=2, b+c=1
  CHECK(cls == std::vector<MultiIndex>{{1, 1, 0}, {2, 0, 1}});
  auto f = enumerate_weight_class({kB, kF, kB, kF}, {{{1, 2, 1, 0}}, {{0, 1, 1, 1}}}, {2, 1});
  for (const auto& x : f) CHECK((x[0] + 2 * x[1] + x[2] == 2 && x[1] + x[2] + x[3] == 1 && x[1] <= 1 && x[3] <= 1));
  CHECK(f.size() == 3);
  CHECK_THROWS_AS(enumerate_weight_class({kB, kB}, {{{1, 0}}}, {1}), std::logic_error);
}

TEST_CASE("compose and involution", "[tensor]") {
  auto L = op_L(), N = op_N();
  auto LL = compose(L, L, {1, 1});
  for (const auto& i : L.weight_class({1, 1}))
    for (const auto& o : L.weight_class({1, 1})) CHECK(LL.element(o, i) == QCoeff(o == i ? 1 : 0));
  CHECK(is_involution(L, {1, 1}));
  CHECK(is_involution(N, {2, 2}));
  auto bad = L.with_element("L'", {0, 1, 0}, {0, 1, 0}, QCoeff(2));
  CHECK_FALSE(is_involution(bad, {1, 1}));
  CHECK_THROWS_AS(compose(L, N, {1, 1}), std::invalid_argument);
}

TEST_CASE("dump round trip", "[tensor]") {
  auto X = op_X();
  auto cls = X.weight_classes(2);
  auto text = X.dump(cls);
  auto back = SparseOp::parse_dump(text);
  CHECK(back.name() == "X");
  CHECK(back.signature() == X.signature());
  for (const auto& w : cls)
    for (const auto& [o, i, c] : X.block(w)) CHECK(back.element(o, i) == c);
  CHECK(back.dump(cls) == text);
}

TEST_CASE("contraction basics", "[tensor]") {
  auto ops = registry();
  auto e = kv94();
  auto [l0, r0] = contract(e, ops, MultiIndex(6, 0), MultiIndex(6, 0));
  CHECK(l0 == QCoeff(1));
  CHECK(r0 == QCoeff(1));
  auto rep = verify_network(e, ops, 1);
  CHECK(rep.pass());
  CHECK(rep.inputs == 64);
  CHECK(rep.checked > 64);
}

TEST_CASE("network order independence of worker count", "[tensor]") {
  auto ops = registry();
  auto a = verify_network(kv94(), ops, 1, 1).to_json();
  auto b = verify_network(kv94(), ops, 1, 3).to_json();
  CHECK(a == b);
}

TEST_CASE("sign monomials and mutation", "[tensor]") {
  auto ops = registry();
  auto e = kv94();
  e.lhs.sign = {{"x1", "i4"}};
  CHECK_FALSE(verify_network(e, ops, 1).pass());
  e.rhs.sign = {{"x1", "i4"}};
  // the same monomial on the other side is not a symmetry of the network
  auto r = verify_network(e, ops, 1);
  CHECK(r.status == (r.pass() ? "pass" : "fail"));
}

TEST_CASE("malformed networks are rejected", "[tensor]") {
  auto ops = registry();
  auto e = kv94();
  e.lhs.factors[0].in[0] = "x9";
  CHECK_THROWS_AS(Network(e, e.lhs, ops), std::invalid_argument);
  e = kv94();
  e.slots[0] = kF;
  CHECK_THROWS_AS(Network(e, e.lhs, ops), std::invalid_argument);
}
