#pragma once

// Recurrence engines for the PBW transition coefficients of the two type-B
// rank-2 diagrams without a closed form at hand (Z) or with one to cross
// check (X). Indices are (i,j,k,l) lower, (a,b,c,d) upper, as in the
// defining expansions; memo tables are shared and synchronized.

#include "tetra/qcoeff.hpp"

#include <array>

namespace tetra {

using Index8 = std::array<int, 8>;  // i, j, k, l, a, b, c, d

// Raw coefficient Z_{ijkl}^{abcd} from the staged recurrences.
QCoeff z_raw(const Index8& x);
// 3D Z element: factorial normalization, then index reversal.
QCoeff z_gamma(const Index8& x);

// Raw coefficient X_{ijkl}^{abcd} (i,k,a,c fermionic; j,l,b,d bosonic).
QCoeff x_raw(const Index8& x);
// The raw coefficients converted to a 3D X element in op_X's convention
// (j,l,b,d fermionic).
QCoeff x_oracle(const Index8& x);

}  // namespace tetra
