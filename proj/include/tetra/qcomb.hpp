#pragma once

// q-combinatorial symbols. The base q^d of every family is given by its
// s-exponent e = 2d, so e = 1 means q^{1/2} and e = 4 means q^2.

#include "tetra/qcoeff.hpp"

#include <vector>

namespace tetra {

// [k]_{q^d,pi} = ((pi q^d)^k - q^{-dk}) / (pi q^d - q^{-d}).
QCoeff bracket(int k, int e = 2, int pi = 1);
// [m]_{q^d,pi}! with [0]! = 1.
QCoeff bracket_fact(int m, int e = 2, int pi = 1);
// (Q)_m = prod_{k=1..m} (1 - Q^k), Q = s^e.
QCoeff poch(int m, int e = 2);
// (Q)_l / ((Q)_{l-m} (Q)_m) for 0 <= m <= l, else 0.
QCoeff qbinom(int l, int m, int e = 2);
// prod (Q)_top / prod (Q)_bot, or 0 when some entry is negative.
QCoeff curly(const std::vector<int>& top, const std::vector<int>& bot, int e = 2);

}  // namespace tetra
