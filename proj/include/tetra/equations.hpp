#pragma once

// Registry of tetrahedron and 3D reflection equations, cross-operator
// relations, involution checks and mutation controls.

#include "tetra/tensor.hpp"

#include <string>
#include <vector>

namespace tetra::eq {

struct OpRef {
  std::string op;
  QVariant var = QVariant::Q;
};

struct EquationInfo {
  std::string name;         // "TE_KV94", "RE_B7", ...
  std::string description;  // operators and slot layout
  EquationSpec spec;
  bool signed_form = false;  // carries nonlocal sign monomials
};

// Tetrahedron network A_123 B_145 C_246 D_356 = D_356 C_246 B_145 A_123.
// `fermionic` lists 1-based slots.
EquationSpec tetrahedron(const std::string& name, const std::vector<OpRef>& ops, const std::vector<int>& fermionic,
                         std::vector<SignMonomial> lhs_sign = {}, std::vector<SignMonomial> rhs_sign = {});
// 3D reflection network with factors on 456, 489, 3579, 269, 258, 1678, 1234
// in written order on the left; the right is the reverse product.
EquationSpec reflection(const std::string& name, const std::vector<OpRef>& ops, const std::vector<int>& fermionic,
                        std::vector<SignMonomial> lhs_sign = {}, std::vector<SignMonomial> rhs_sign = {});
// Matrix-form side from slot lists in written order.
Side matrix_side(const std::vector<std::pair<OpRef, std::vector<int>>>& factors, int slots);

const std::vector<EquationInfo>& registry();
// Throws std::invalid_argument for an unknown name.
const EquationInfo& lookup(const std::string& name);

// Resolver onto ops3d families.
OpResolver quantum_ops();

VerificationReport verify(const std::string& name, int bound, int jobs = 1);

// Cross relations: RL_similar, L_vs_N, M_from_L, K_vs_Jq2, Ltilde_from_L,
// X_to_Y. Checked elementwise on every weight block of bound.
const std::vector<std::string>& relation_names();
VerificationReport verify_relation(const std::string& name, int bound);

// L, N, X, Y (or any family) squared equals the identity on each block.
VerificationReport verify_involution(const std::string& family, int bound);

enum class Mutation {
  Coefficient,  // negate the vacuum element of the first left factor
  Sign,         // drop the first left sign monomial
};
// Same spec with one corruption. Sign mutation needs a signed equation.
VerificationReport verify_mutated(const std::string& name, int bound, Mutation m, int jobs = 1);

}  // namespace tetra::eq
