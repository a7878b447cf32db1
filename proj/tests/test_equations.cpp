#include "catch_amalgamated.hpp"

#include "tetra/equations.hpp"
#include "tetra/ops3d.hpp"

using namespace tetra;
using namespace tetra::eq;

TEST_CASE("registry lists every equation once", "[equations]") {
  const std::vector<std::string> names = {"TE_KV94", "TE_BS06", "TE_LLMM", "TE_C3",  "TE_C4",  "TE_C5",
                                          "TE_C6",   "RE_KO13", "RE_KO12", "RE_B2",  "RE_B3",  "RE_B4",
                                          "RE_B5",   "RE_B6",   "RE_B7",   "RE_B8"};
  REQUIRE(registry().size() == names.size());
  for (const auto& n : names) CHECK(lookup(n).name == n);
  CHECK_THROWS_AS(lookup("TE_nope"), std::invalid_argument);
  CHECK(lookup("TE_C5").signed_form);
  CHECK_FALSE(lookup("TE_C3").signed_form);
  CHECK(lookup("RE_B7").spec.lhs.sign.size() == 7);
}

TEST_CASE("matrix_side reproduces the tetrahedron wiring", "[equations]") {
  OpRef R{"R"};
  EquationSpec e;
  e.name = "KV94 by slots";
  e.slots.assign(6, SlotKind::Boson);
  e.lhs = matrix_side({{R, {1, 2, 3}}, {R, {1, 4, 5}}, {R, {2, 4, 6}}, {R, {3, 5, 6}}}, 6);
  e.rhs = matrix_side({{R, {3, 5, 6}}, {R, {2, 4, 6}}, {R, {1, 4, 5}}, {R, {1, 2, 3}}}, 6);
  auto a = verify_network(e, quantum_ops(), 1);
  auto b = verify("TE_KV94", 1);
  CHECK(a.pass());
  CHECK(a.checked == b.checked);
}

TEST_CASE("tetrahedron equations hold at bound 1", "[equations]") {
  for (const char* n : {"TE_KV94", "TE_BS06", "TE_LLMM", "TE_C3", "TE_C4", "TE_C5", "TE_C6"}) {
    auto rep = verify(n, 1);
    INFO(n << " mismatches " << rep.mismatches.size());
    CHECK(rep.pass());
    CHECK(rep.checked > 0);
  }
}

TEST_CASE("reflection equations hold at bound 0", "[equations]") {
  for (const auto& e : registry()) {
    if (e.name.rfind("RE_", 0) != 0) continue;
    auto rep = verify(e.name, 0);
    INFO(e.name);
    CHECK(rep.pass());
  }
}

TEST_CASE("mutations are detected", "[equations]") {
  CHECK_FALSE(verify_mutated("TE_BS06", 1, Mutation::Coefficient).pass());
  CHECK_FALSE(verify_mutated("TE_C5", 1, Mutation::Sign).pass());
  CHECK_FALSE(verify_mutated("TE_C4", 1, Mutation::Coefficient).pass());
  CHECK_THROWS_AS(verify_mutated("TE_KV94", 1, Mutation::Sign), std::invalid_argument);
}

TEST_CASE("cross relations", "[equations]") {
  for (const auto& n : relation_names()) {
    auto rep = verify_relation(n, 3);
    INFO(n << " " << rep.status);
    CHECK(rep.pass());
    CHECK(rep.checked > 0);
  }
  CHECK_THROWS_AS(verify_relation("P_vs_Q", 1), std::invalid_argument);
}

TEST_CASE("involutions", "[equations]") {
  for (const char* f : {"L", "N", "X", "Y"}) {
    INFO(f);
    CHECK(verify_involution(f, 2).pass());
  }
  // the crystal-free R also squares to one
  CHECK(verify_involution("R", 1).pass());
}
