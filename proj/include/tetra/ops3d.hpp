#pragma once

// Closed-form 3D operators.
//
// Signatures (B = bosonic Fock space, F = fermionic):
//   R: BBB   L: FFB   M: BFF   Ltilde: BFF   N: FBF
//   J, K, Z: BBBB     X, Y: BFBF
// Three-slot operators conserve i+j and j+k; J, X, Y, Z conserve i+2j+k and
// j+k+l; K conserves j+2k+l and i+j+k.

#include "tetra/tensor.hpp"

#include <string>
#include <vector>

namespace tetra {

// Coefficient map realizing q -> q^-1, q^2, -q on s = q^{1/2}.
QCoeff apply_variant(const QCoeff& c, QVariant v);

// Raw element formulas in (out, in) order; valid only on the weight shell.
QCoeff elem_R(const MultiIndex& out, const MultiIndex& in);
QCoeff elem_L(const MultiIndex& out, const MultiIndex& in);
QCoeff elem_N(const MultiIndex& out, const MultiIndex& in);
QCoeff elem_J(const MultiIndex& out, const MultiIndex& in);
QCoeff elem_X(const MultiIndex& out, const MultiIndex& in);
QCoeff elem_Y(const MultiIndex& out, const MultiIndex& in);

SparseOp op_R(QVariant v = QVariant::Q);
SparseOp op_L(QVariant v = QVariant::Q);
SparseOp op_M(QVariant v = QVariant::Q);
SparseOp op_Ltilde(QVariant v = QVariant::Q);
SparseOp op_N(QVariant v = QVariant::Q);
SparseOp op_J(QVariant v = QVariant::Q);
SparseOp op_K(QVariant v = QVariant::Q);
SparseOp op_X(QVariant v = QVariant::Q);
SparseOp op_Y(QVariant v = QVariant::Q);
SparseOp op_Z(QVariant v = QVariant::Q);

// Shared instance per (family, variant), so column caches are reused.
// Families: R L M Ltilde N J K X Y Z. Throws std::invalid_argument otherwise.
SparseOp family(const std::string& name, QVariant v = QVariant::Q);
const std::vector<std::string>& family_names();

}  // namespace tetra
